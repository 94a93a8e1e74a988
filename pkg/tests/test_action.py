from __future__ import annotations

import math

import pytest
from hypothesis import given

import oracles as O
from klein.action import (PHI, RingEndo, apply, invariants_of_degree, is_invariant, orbit,
                          orbit_sum, orbit_sum_kernel, phi, reynolds, substitute)
from klein.poly import A, B, BiPoly, HomogPoly, parse, parse_homog, render, square
from test_poly import bipolys, homog

H = parse_homog


def test_phi_examples():
    assert phi(A) == B
    assert render(phi(H("a*b"))) == "a*b + b^2"
    assert phi(H("a^2 + a*b + b^2")) == H("a^2 + a*b + b^2")


def test_phi_keeps_homogeneous_type():
    assert isinstance(phi(H("a^3 + b^3")), HomogPoly)
    assert isinstance(phi(parse("a + b^2")), BiPoly)


@given(bipolys(max_degree=12))
def test_phi_matches_substitution_oracle(f):
    assert O.from_lib(phi(f)) == O.phi(O.from_lib(f))
    assert apply(PHI, f) == substitute(PHI, f)


@given(bipolys(max_degree=32))
def test_phi_has_order_three(f):
    assert phi(f, 3) == f
    assert phi(phi(phi(f))) == f


@given(bipolys(), bipolys())
def test_phi_multiplicative(f, g):
    assert phi(f * g) == phi(f) * phi(g)
    assert phi(f + g) == phi(f) + phi(g)


def test_nonlinear_endo_uses_substitution():
    sq = RingEndo(A + A * A, B + B * B)
    assert not sq.is_linear
    assert render(apply(sq, H("a*b"))) == "a^2*b^2 + a^2*b + a*b^2 + a*b"


def test_orbit_examples():
    assert set(orbit(A).elements) == {A, B, A + B}
    assert orbit(H("a^2 + a*b + b^2")).elements == (H("a^2 + a*b + b^2"),)
    assert set(orbit(H("a^2")).elements) == {H("a^2"), H("b^2"), H("a^2 + b^2")}
    with pytest.raises(ValueError):
        orbit(HomogPoly.zero(2))


@given(homog(12, 0, nonzero=True))
def test_orbit_size_and_closure(x):
    S = orbit(x)
    assert len(S.elements) in (1, 3)
    assert {phi(e) for e in S.elements} == set(S.elements)


def test_orbit_sum_examples():
    assert orbit_sum(A).is_zero()
    assert render(orbit_sum(H("a*b"))) == "a^2 + a*b + b^2"
    assert orbit_sum(H("a^4")).is_zero()


def test_reynolds_examples():
    assert render(reynolds(H("a*b"))) == "a^2 + a*b + b^2"
    f = H("a^2*b + a*b^2")
    assert reynolds(f) == f
    assert reynolds(A).is_zero()


@given(bipolys(max_degree=16))
def test_reynolds_lands_in_invariants(f):
    r = reynolds(f)
    assert is_invariant(r)
    assert reynolds(r) == r


@given(homog(16))
def test_orbit_sum_of_square(x):
    assert orbit_sum(square(x).homogeneous(2 * x.degree)) == square(orbit_sum(x)).homogeneous(2 * x.degree)


def _brute_invariant_dim(d: int) -> int:
    fixed = sum(1 for p in O.all_forms(d, nonzero=False) if O.phi(p) == p)
    return int(math.log2(fixed))


def test_invariants_examples():
    assert invariants_of_degree(0).rank == 1
    assert invariants_of_degree(1).rank == 0
    (row,) = invariants_of_degree(2).rows
    assert HomogPoly(2, row) == H("a^2 + a*b + b^2")


@pytest.mark.parametrize("d", range(12))
def test_invariant_dimension_brute_force(d):
    assert invariants_of_degree(d).rank == _brute_invariant_dim(d)
    for row in invariants_of_degree(d).rows:
        assert is_invariant(HomogPoly(d, row))


def test_invariant_dimensions_known_sequence():
    dims = [invariants_of_degree(d).rank for d in range(12)]
    assert dims == [1, 0, 1, 2, 1, 2, 3, 2, 3, 4, 3, 4]


@pytest.mark.parametrize("d", range(1, 13))
def test_orbit_sum_kernel_brute_force(d):
    k = orbit_sum_kernel(d)
    count = sum(1 for p in O.all_forms(d, nonzero=False)
                if not O.add(p, O.phi(p), O.phi(O.phi(p))))
    assert 2 ** k.rank == count
