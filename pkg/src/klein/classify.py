"""Orbit-generated parameter ideals and the searches that classify them.

An orbit C3.x of a homogeneous x generates a parameter ideal exactly when
x + phi(x) + phi^2(x) = 0 and x, phi(x) are coprime; the ideal is then
<x, phi(x)>.  Each such orbit contains exactly one element v whose leading
coefficients (of a^n, of b^n) are (1, 0), which lets the search enumerate
orbits without repetition.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import NamedTuple

from .action import Orbit, orbit, orbit_sum_bits, orbit_sum_kernel, phi, phi_bits
from .ideals import IdealError, GradedIdeal, equal_ideals, is_c3_invariant, is_parameter_ideal
from .linalg import BitMatrix, in_span, member, span_elements
from .poly import BiPoly, HomogPoly, gcd_bits, render, square, sqrt
from .steenrod import sq_bits, total_sq, total_sq_bits

DEFAULT_SEARCH_CAP = 20
DEFAULT_SINGLE_DEGREE_CAP = 8

_BIT = {"type": "integer", "enum": [0, 1]}
_POLY = {"type": "string", "minLength": 1}

CERTIFICATE_SCHEMA = {
    "type": "object",
    "properties": {
        "v": _POLY,
        "phi_v": _POLY,
        "closed": {"type": "boolean"},
        "sq1": {"oneOf": [{"type": "null"}, {
            "type": "object",
            "properties": {k: _BIT for k in ("lambda1", "lambda2", "nu1", "nu2")},
            "required": ["lambda1", "lambda2", "nu1", "nu2"],
        }]},
        "sq": {"oneOf": [{"type": "null"}, {
            "type": "object",
            "properties": {"coeff_v": _POLY, "coeff_phi_v": _POLY},
            "required": ["coeff_v", "coeff_phi_v"],
        }]},
    },
    "required": ["v", "phi_v", "closed", "sq1", "sq"],
}

REPORT_SCHEMA = {
    "type": "object",
    "properties": {
        "degree": {"type": "integer", "minimum": 1},
        "candidates": {"type": "integer", "minimum": 0},
        "after_kernel": {"type": "integer", "minimum": 0},
        "after_coprime": {"type": "integer", "minimum": 0},
        "survivors": {"type": "array", "items": {
            "type": "object",
            "properties": {"v": _POLY, "certificate": CERTIFICATE_SCHEMA},
            "required": ["v", "certificate"],
        }},
        "elapsed_ms": {"type": "number", "minimum": 0},
        "config": {"type": "object"},
    },
    "required": ["degree", "candidates", "after_kernel", "after_coprime",
                 "survivors", "elapsed_ms", "config"],
}


class NotNormalizable(ValueError):
    pass


class PMapValue(NamedTuple):
    """Coefficients of a^n and of b^n."""

    top: int
    bottom: int


def p_map(v: HomogPoly) -> PMapValue:
    return PMapValue(v.coefficient(v.degree), v.coefficient(0))


def _coprime_bits(n: int, x: int, y: int) -> bool:
    return gcd_bits(n, x, n, y)[0] == 0


def orbit_generates_parameter_ideal(x: HomogPoly) -> bool:
    if x.is_zero():
        raise ValueError("x must be nonzero")
    if orbit_sum_bits(x.degree, x.bits):
        return False
    return _coprime_bits(x.degree, x.bits, phi_bits(x.degree, x.bits))


def normalize_orbit(S: Orbit | HomogPoly) -> HomogPoly:
    """The unique v in the orbit with p(v) = (1, 0)."""
    if isinstance(S, HomogPoly):
        S = orbit(S)
    if not orbit_generates_parameter_ideal(S.base):
        raise NotNormalizable(f"the orbit of {render(S.base)} does not generate a parameter ideal")
    hits = [v for v in S if p_map(v) == (1, 0)]
    if len(hits) != 1:
        raise NotNormalizable(f"{len(hits)} elements with p = (1, 0) in the orbit of {render(S.base)}")
    v = hits[0]
    pv = phi(v)
    if p_map(pv) != (0, 1) or p_map(phi(pv)) != (1, 1):
        raise AssertionError(f"p-values of the orbit of {render(v)} are not (1,0), (0,1), (1,1)")
    return v


@dataclass(frozen=True)
class OrbitIdealCertificate:
    """Closure data for J = <v, phi(v)> with v normalized.

    ``sq1`` holds (lambda1, lambda2, nu1, nu2) with
    Sq^1(v) = (lambda1 a + lambda2 b) v + (nu1 a + nu2 b) phi(v) whenever
    such bits exist.  ``sq_coefficients`` holds (c, d) with
    Sq(v) = c v + d phi(v) when J is Steenrod closed.
    """

    v: HomogPoly
    phi_v: HomogPoly
    closed: bool
    sq1: tuple[int, int, int, int] | None
    sq_coefficients: tuple[BiPoly, BiPoly] | None

    def __bool__(self) -> bool:
        return self.closed

    def sq1_reconstruction(self) -> HomogPoly:
        """(lambda1 a + lambda2 b) v + (nu1 a + nu2 b) phi(v)."""
        if self.sq1 is None:
            raise ValueError("no Sq^1 coefficients")
        l1, l2, n1, n2 = self.sq1
        n = self.v.degree
        bits = 0
        for bit, row in zip((l1, l2, n1, n2),
                            (self.v.bits << 1, self.v.bits, self.phi_v.bits << 1, self.phi_v.bits)):
            if bit:
                bits ^= row
        return HomogPoly(n + 1, bits)

    def to_json(self) -> dict:
        out = {"v": render(self.v), "phi_v": render(self.phi_v), "closed": self.closed,
               "sq1": None, "sq": None}
        if self.sq1 is not None:
            out["sq1"] = dict(zip(("lambda1", "lambda2", "nu1", "nu2"), self.sq1))
        if self.sq_coefficients is not None:
            c, d = self.sq_coefficients
            out["sq"] = {"coeff_v": render(c), "coeff_phi_v": render(d)}
        return out


def sq1_coefficients(v: HomogPoly, pv: HomogPoly) -> tuple[int, int, int, int] | None:
    """Bits (lambda1, lambda2, nu1, nu2) writing Sq^1(v) through a v, b v, a phi(v), b phi(v)."""
    n = v.degree
    rows = BitMatrix([v.bits << 1, v.bits, pv.bits << 1, pv.bits], n + 2)
    ok, cert = member(rows, sq_bits(n, v.bits, 1))
    if not ok:
        return None
    return tuple(int(k in cert) for k in range(4))


def orbit_ideal_is_steenrod_closed(x: HomogPoly) -> OrbitIdealCertificate:
    """Whether <C3.x> is Steenrod closed; truthy result iff it is.

    Only Sq(v) needs checking for the normalized v: phi commutes with Sq and
    <v, phi v> = <phi v, phi^2 v> because the orbit sum vanishes.
    """
    if not orbit_generates_parameter_ideal(x):
        raise ValueError(f"the orbit of {render(x)} does not generate a parameter ideal")
    v = normalize_orbit(orbit(x))
    pv = phi(v)
    J = GradedIdeal([v, pv])
    m = J.contains(total_sq(v))
    coeffs = m.coefficients if m else None
    return OrbitIdealCertificate(v, pv, m.member, sq1_coefficients(v, pv), coeffs)


def orbit_ideal_good(x: HomogPoly) -> bool:
    """The orbit of x generates a Steenrod-closed parameter ideal."""
    return orbit_generates_parameter_ideal(x) and bool(orbit_ideal_is_steenrod_closed(x))


def square_orbit(x: HomogPoly) -> HomogPoly:
    return square(x).homogeneous(2 * x.degree)


def unsquare_orbit(y: HomogPoly) -> HomogPoly:
    return sqrt(y).homogeneous(y.degree // 2)


def is_orbit_generated(J: GradedIdeal) -> bool:
    """Whether J is a parameter ideal generated by the C3-orbit of one element."""
    try:
        if not is_parameter_ideal(J):
            return False
    except IdealError:
        return False
    x0, y0 = J.minimal_generators()
    if x0.degree != y0.degree or not is_c3_invariant(J):
        return False
    d = x0.degree
    for zb in span_elements(J.component(d)):
        if not zb:
            continue
        z = HomogPoly(d, zb)
        if orbit_generates_parameter_ideal(z) and equal_ideals(J, GradedIdeal([z, phi(z)])):
            return True
    return False


# -- exhaustive search by degree ------------------------------------------------


def _closed_fast(n: int, v: int, u: int) -> bool:
    """Sq(v) in <v, u> for degree-n forms v, u, checked component by component."""
    for k, w in enumerate(total_sq_bits(n, v)):
        if k == 0 or not w:
            continue
        rows = [v << s for s in range(k + 1)] + [u << s for s in range(k + 1)]
        if not in_span(rows, w):
            return False
    return True


def kernel_slice(n: int) -> tuple[int, tuple[int, ...]] | None:
    """Affine slice {v in ker(1+phi+phi^2) : coefficient of a^n is 1, of b^n is 0}.

    Returns (particular solution, basis of the direction space) or None if empty.
    """
    ker = orbit_sum_kernel(n)
    top, bottom = 1 << n, 1
    # constraint signature of each basis vector: bit 0 <- b^n coefficient, bit 1 <- a^n
    sig = BitMatrix([(k & bottom) | ((k & top) and 2) for k in ker.rows], 2)
    directions = []
    for rel in sig.rref().relations:
        vec = 0
        for j in range(rel.bit_length()):
            if rel >> j & 1:
                vec ^= ker.rows[j]
        directions.append(vec)
    ok, cert = member(sig, 0b10)
    if not ok:
        return None
    particular = 0
    for j in cert:
        particular ^= ker.rows[j]
    basis = BitMatrix(directions, n + 1).rref().rows
    return particular, tuple(basis)


@dataclass
class SearchConfig:
    degree_cap: int = DEFAULT_SEARCH_CAP
    workers: int = 1
    kernel_prefilter: bool = True


@dataclass
class ClassificationReport:
    degree: int
    candidates: int
    after_kernel: int
    after_coprime: int
    survivors: list[OrbitIdealCertificate]
    elapsed_ms: float
    config: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "candidates": self.candidates,
            "after_kernel": self.after_kernel,
            "after_coprime": self.after_coprime,
            "survivors": [{"v": render(c.v), "certificate": c.to_json()} for c in self.survivors],
            "elapsed_ms": self.elapsed_ms,
            "config": self.config,
        }


def _scan(n: int, start: int, directions: tuple[int, ...], lo: int, hi: int,
          check_orbit_sum: bool) -> tuple[int, int, list[int]]:
    after_kernel = after_coprime = 0
    survivors = []
    for c in range(lo, hi):
        v = start
        j = 0
        while c:
            if c & 1:
                v ^= directions[j]
            c >>= 1
            j += 1
        if check_orbit_sum and orbit_sum_bits(n, v):
            continue
        after_kernel += 1
        u = phi_bits(n, v)
        if not _coprime_bits(n, v, u):
            continue
        after_coprime += 1
        if _closed_fast(n, v, u):
            survivors.append(v)
    return after_kernel, after_coprime, survivors


def _scan_args(args):
    return _scan(*args)


def search_degree(n: int, config: SearchConfig | None = None) -> ClassificationReport:
    """All normalized v of degree n whose orbit generates a Steenrod-closed parameter ideal."""
    config = config or SearchConfig()
    if n < 1:
        raise ValueError("degree must be positive")
    if n > config.degree_cap:
        raise ValueError(f"degree {n} exceeds the search cap {config.degree_cap}")
    t0 = time.perf_counter()
    candidates = 1 << (n - 1)
    if config.kernel_prefilter:
        sl = kernel_slice(n)
        if sl is None:
            start, directions, total = 0, (), 0
        else:
            start, directions = sl
            total = 1 << len(directions)
        check = False
    else:
        start = 1 << n
        directions = tuple(1 << i for i in range(1, n))
        total = candidates
        check = True
    workers = max(1, config.workers)
    chunks = min(total, workers * 4) or 1
    bounds = [total * k // chunks for k in range(chunks + 1)]
    tasks = [(n, start, directions, bounds[k], bounds[k + 1], check) for k in range(chunks)]
    if workers == 1 or total < 256:
        results = [_scan(*t) for t in tasks]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_scan_args, tasks))
    after_kernel = sum(r[0] for r in results)
    after_coprime = sum(r[1] for r in results)
    found = sorted(v for r in results for v in r[2])
    survivors = [orbit_ideal_is_steenrod_closed(HomogPoly(n, v)) for v in found]
    if not all(survivors):
        raise AssertionError("fast closure check disagrees with the certified check")
    elapsed = (time.perf_counter() - t0) * 1000
    return ClassificationReport(n, candidates, after_kernel, after_coprime, survivors,
                                round(elapsed, 3), asdict(config))


# -- ideals generated in a single degree ----------------------------------------


@dataclass(frozen=True)
class SingleDegreeIdeal:
    """J = <x, y> for a 2-dimensional subspace span{x, y} of one degree component."""

    degree: int
    x: HomogPoly
    y: HomogPoly
    parameter: bool
    c3_invariant: bool
    steenrod_closed: bool
    orbit_generated: bool

    @property
    def ideal(self) -> GradedIdeal:
        return GradedIdeal([self.x, self.y])

    @property
    def all_flags(self) -> bool:
        return self.parameter and self.c3_invariant and self.steenrod_closed


def gaussian_binomial_2(n: int, k: int) -> int:
    """Number of k-dimensional subspaces of F2^n."""
    num = den = 1
    for i in range(k):
        num *= (1 << (n - i)) - 1
        den *= (1 << (i + 1)) - 1
    return num // den


def _flags(d: int, x: int, y: int) -> tuple[bool, bool, bool, bool]:
    span = (x, y, x ^ y)
    parameter = _coprime_bits(d, x, y)
    invariant = phi_bits(d, x) in span and phi_bits(d, y) in span
    closed = _closed_fast(d, x, y) and _closed_fast(d, y, x)
    orbit_gen = False
    if parameter:
        for z in span:
            pz = phi_bits(d, z)
            if pz != z and pz in span and not orbit_sum_bits(d, z) and _coprime_bits(d, z, pz):
                orbit_gen = True
                break
    return parameter, invariant, closed, orbit_gen


def _pivot_pair_ideals(d: int, p1: int, p2: int) -> list[tuple]:
    w = d + 1
    free1 = [i for i in range(p1 + 1, w) if i != p2]
    free2 = list(range(p2 + 1, w))
    out = []
    for c1 in range(1 << len(free1)):
        x = 1 << p1
        for j, i in enumerate(free1):
            if c1 >> j & 1:
                x |= 1 << i
        for c2 in range(1 << len(free2)):
            y = 1 << p2
            for j, i in enumerate(free2):
                if c2 >> j & 1:
                    y |= 1 << i
            out.append((x, y) + _flags(d, x, y))
    return out


def _pivot_pair_args(args):
    return _pivot_pair_ideals(*args)


def enumerate_single_degree_ideals(d: int, cap: int = DEFAULT_SINGLE_DEGREE_CAP,
                                   workers: int = 1) -> list[SingleDegreeIdeal]:
    """Every 2-dimensional subspace V of the degree-d component, with the flags of <V>.

    Subspaces are listed by their reduced basis, so each appears once.
    """
    if d < 1:
        raise ValueError("degree must be positive")
    if d > cap:
        raise ValueError(f"degree {d} exceeds the cap {cap}")
    tasks = [(d, p1, p2) for p1 in range(d + 1) for p2 in range(p1 + 1, d + 1)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            chunks = list(pool.map(_pivot_pair_args, tasks))
    else:
        chunks = [_pivot_pair_ideals(*t) for t in tasks]
    out = [SingleDegreeIdeal(d, HomogPoly(d, x), HomogPoly(d, y), *flags)
           for chunk in chunks for (x, y, *flags) in chunk]
    if len(out) != gaussian_binomial_2(d + 1, 2):
        raise AssertionError("subspace enumeration miscounted")
    return out
