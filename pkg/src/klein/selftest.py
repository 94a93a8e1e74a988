"""Seeded randomized identity suites, shared by the CLI and the test suite.

Every suite takes a ``random.Random`` and a case count and returns the list
of failure messages (empty on success).  ``Ops`` carries the operations under
test so a deliberately broken Steenrod square can be injected as a negative
control.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable

from . import action, poly, steenrod
from .action import RingEndo, phi, reynolds
from .classify import (kernel_slice, orbit_generates_parameter_ideal, orbit_ideal_good,
                       p_map, sq1_coefficients, square_orbit, unsquare_orbit)
from .linalg import BitMatrix, kernel, member, span_elements
from .poly import A, B, BiPoly, HomogPoly


def corrupted_total_sq(f) -> BiPoly:
    """total_sq with the coefficient of b^(2n) in Sq^n flipped for every degree n >= 1."""
    f = BiPoly.coerce(f)
    r = steenrod.total_sq(f)
    flips = {2 * n: 1 for n in f.degrees() if n >= 1}
    return r + BiPoly(flips)


@dataclass
class Ops:
    total_sq: Callable = steenrod.total_sq


@dataclass
class SuiteResult:
    name: str
    cases: int
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


SUITES: dict[str, Callable] = {}


def suite(name: str):
    def register(fn):
        SUITES[name] = fn
        return fn
    return register


def rand_homog(rng: random.Random, max_degree: int, min_degree: int = 0,
               nonzero: bool = False) -> HomogPoly:
    n = rng.randint(min_degree, max_degree)
    while True:
        bits = rng.getrandbits(n + 1)
        if bits or not nonzero:
            return HomogPoly(n, bits)


def rand_bipoly(rng: random.Random, max_degree: int) -> BiPoly:
    parts = {}
    for _ in range(rng.randint(0, 3)):
        n = rng.randint(0, max_degree)
        parts[n] = rng.getrandbits(n + 1)
    return BiPoly(parts)


def _fail(out: list, label: str, *args) -> None:
    out.append(f"{label}: " + ", ".join(str(a) for a in args))


# -- Steenrod -----------------------------------------------------------------


@suite("cartan")
def cartan(rng, cases, ops=Ops()):
    out = []
    for _ in range(cases):
        f, g = rand_bipoly(rng, 16), rand_bipoly(rng, 16)
        if ops.total_sq(f * g) != ops.total_sq(f) * ops.total_sq(g):
            _fail(out, "Sq(fg) != Sq(f)Sq(g)", f, g)
    return out


SQ_ENDO = RingEndo(A + A * A, B + B * B)


@suite("sq_substitution")
def sq_substitution(rng, cases, ops=Ops()):
    out = []
    for _ in range(cases):
        f = rand_bipoly(rng, 12)
        if ops.total_sq(f) != action.substitute(SQ_ENDO, f):
            _fail(out, "Sq(f) differs from the substitution a->a+a^2, b->b+b^2", f)
    return out


@suite("sq_graded")
def sq_graded(rng, cases, ops=Ops()):
    out = []
    for _ in range(cases):
        f = rand_homog(rng, 20)
        n = f.degree
        if steenrod.sq_k(f, 0) != f:
            _fail(out, "Sq^0(f) != f", f)
        if steenrod.sq_k(f, n).bits != poly.spread(f.bits):
            _fail(out, "Sq^n(f) != f^2", f)
        k = rng.randint(n + 1, n + 5)
        if steenrod.sq_k(f, k).bits:
            _fail(out, "Sq^k(f) != 0 for k > deg f", f, k)
        if BiPoly.from_homog(steenrod.sq_k(f, k) for k in range(n + 1)) != ops.total_sq(f):
            _fail(out, "graded pieces do not sum to Sq(f)", f)
    return out


@suite("derivation")
def derivation(rng, cases, ops=Ops()):
    out = []
    sq1 = steenrod.sq1
    for _ in range(cases):
        f, g = rand_homog(rng, 16), rand_homog(rng, 16)
        if sq1(f * g) != sq1(f) * g + f * sq1(g):
            _fail(out, "Sq^1 is not a derivation", f, g)
    return out


@suite("sq1_degree1")
def sq1_degree1(rng, cases, ops=Ops()):
    out = []
    for _ in range(cases):
        z = HomogPoly(1, rng.getrandbits(2))
        if steenrod.sq1(z) != z * z:
            _fail(out, "Sq^1(z) != z^2", z)
    return out


@suite("sq1_closed_form")
def sq1_closed_form(rng, cases, ops=Ops()):
    out = []
    for _ in range(cases):
        v = rand_homog(rng, 30)
        if steenrod.sq1_split(v).closed_form != steenrod.sq1(v):
            _fail(out, "closed-form Sq^1 mismatch", v)
    return out


@suite("kameko")
def kameko(rng, cases, ops=Ops()):
    out = []
    keys = ("1", "a", "b", "ab")
    for _ in range(cases):
        x, y = rand_bipoly(rng, 20), rand_bipoly(rng, 20)
        z = rand_bipoly(rng, 8)
        dx = steenrod.kameko(x)
        if dx.reconstruct() != x:
            _fail(out, "reconstruction", x)
        dy = steenrod.kameko(y)
        dxy = steenrod.kameko(x + y)
        dxz = steenrod.kameko(x * poly.square(z))
        for k in keys:
            if dxy[k] != dx[k] + dy[k]:
                _fail(out, f"kappa_{k} not additive", x, y)
            if dxz[k] != dx[k] * z:
                _fail(out, f"kappa_{k}(x z^2) != kappa_{k}(x) z", x, z)
        h = rand_homog(rng, 20)
        dh = steenrod.kameko(h)
        if h.degree % 2 == 0 and (dh.ka or dh.kb):
            _fail(out, "kappa_a/kappa_b nonzero in even degree", h)
        if h.degree % 2 == 1 and (dh.k1 or dh.kab):
            _fail(out, "kappa_1/kappa_ab nonzero in odd degree", h)
    return out


# -- group action ---------------------------------------------------------------


@suite("phi_order")
def phi_order(rng, cases, ops=Ops()):
    out = []
    for _ in range(cases):
        f = rand_bipoly(rng, 32)
        if phi(phi(phi(f))) != f:
            _fail(out, "phi^3 != id", f)
    return out


@suite("phi_multiplicative")
def phi_multiplicative(rng, cases, ops=Ops()):
    out = []
    for _ in range(cases):
        f, g = rand_bipoly(rng, 16), rand_bipoly(rng, 16)
        if phi(f * g) != phi(f) * phi(g):
            _fail(out, "phi(fg) != phi(f)phi(g)", f, g)
        if phi(f + g) != phi(f) + phi(g):
            _fail(out, "phi not additive", f, g)
    return out


@suite("reynolds")
def reynolds_suite(rng, cases, ops=Ops()):
    out = []
    for _ in range(cases):
        f = rand_bipoly(rng, 24)
        r = reynolds(f)
        if phi(r) != r:
            _fail(out, "Reynolds image not invariant", f)
        if reynolds(r) != r:
            _fail(out, "Reynolds not idempotent", f)
    return out


@suite("orbit_sum_square")
def orbit_sum_square(rng, cases, ops=Ops()):
    out = []
    for _ in range(cases):
        x = rand_homog(rng, 20)
        if action.orbit_sum(x * x) != action.orbit_sum(x) * action.orbit_sum(x):
            _fail(out, "orbit_sum(x^2) != orbit_sum(x)^2", x)
    return out


# -- polynomial layer ---------------------------------------------------------------


@suite("frobenius")
def frobenius(rng, cases, ops=Ops()):
    out = []
    for _ in range(cases):
        f, g = rand_bipoly(rng, 24), rand_bipoly(rng, 24)
        if poly.square(f + g) != poly.square(f) + poly.square(g):
            _fail(out, "(f+g)^2 != f^2 + g^2", f, g)
        if poly.square(f) != f * f:
            _fail(out, "square(f) != f*f", f)
        if poly.sqrt(poly.square(f)) != f:
            _fail(out, "sqrt(f^2) != f", f)
    return out


@suite("gcd")
def gcd_suite(rng, cases, ops=Ops()):
    out = []
    for _ in range(cases):
        f = rand_homog(rng, 12, 1, nonzero=True)
        g = rand_homog(rng, 12, 1, nonzero=True)
        if rng.random() < 0.5:
            h = rand_homog(rng, 6, 1, nonzero=True)
            f, g = f * h, g * h
        d = poly.gcd_homog(f, g)
        try:
            qf, qg = poly.divide_homog(f, d), poly.divide_homog(g, d)
        except ValueError:
            _fail(out, "gcd does not divide", f, g)
            continue
        if poly.gcd_homog(qf, qg).degree != 0:
            _fail(out, "cofactors not coprime", f, g)
        e, u = poly.dehomogenize(f)
        if HomogPoly(e, 1 << e) * poly.homogenize(u) != f:
            _fail(out, "dehomogenize round trip", f)
    return out


@suite("parse")
def parse_suite(rng, cases, ops=Ops()):
    out = []
    for _ in range(cases):
        f = rand_bipoly(rng, 32)
        if poly.parse(poly.render(f)) != f:
            _fail(out, "parse(render(f)) != f", f)
    return out


@suite("rank_nullity")
def rank_nullity(rng, cases, ops=Ops()):
    out = []
    for _ in range(cases):
        w = rng.randint(0, 20)
        h = rng.randint(0, 20)
        m = BitMatrix([rng.getrandbits(w) for _ in range(h)], w)
        ker = kernel(m)
        if m.rank + ker.rank != h:
            _fail(out, "rank + nullity != number of rows", m)
        for rel in ker.rows:
            acc = 0
            for k in range(h):
                if rel >> k & 1:
                    acc ^= m.rows[k]
            if acc:
                _fail(out, "kernel vector not annihilated", m)
        v = rng.getrandbits(w)
        ok, cert = member(m, v)
        if ok:
            acc = 0
            for k in cert:
                acc ^= m.rows[k]
            if acc != v:
                _fail(out, "membership certificate wrong", m, v)
        elif any(x == v for x in span_elements(m)):
            _fail(out, "membership false negative", m, v)
    return out


# -- orbit ideals ------------------------------------------------------------------


def rand_orbit_parameter_element(rng: random.Random, max_degree: int) -> HomogPoly | None:
    """A random element of a random orbit generating a parameter ideal, if one is hit."""
    n = rng.randint(1, max_degree)
    sl = kernel_slice(n)
    if sl is None:
        return None
    start, dirs = sl
    v = start
    for d in dirs:
        if rng.getrandbits(1):
            v ^= d
    x = HomogPoly(n, v)
    if not orbit_generates_parameter_ideal(x):
        return None
    return phi(x, rng.randrange(3))


@suite("orbit_p_values")
def orbit_p_values(rng, cases, ops=Ops()):
    out = []
    done = 0
    while done < cases:
        x = rand_orbit_parameter_element(rng, 14)
        if x is None:
            continue
        done += 1
        values = {p_map(phi(x, k)) for k in range(3)}
        if values != {(1, 0), (0, 1), (1, 1)}:
            _fail(out, "p-values of orbit", x)
            continue
        v = next(phi(x, k) for k in range(3) if p_map(phi(x, k)) == (1, 0))
        if p_map(phi(v)) != (0, 1) or p_map(phi(v, 2)) != (1, 1):
            _fail(out, "p-value assignment", x)
    return out


@suite("squaring")
def squaring(rng, cases, ops=Ops()):
    out = []
    for _ in range(cases):
        x = rand_homog(rng, 10, 1, nonzero=True)
        out.extend(check_squaring(x))
    return out


def check_squaring(x: HomogPoly) -> list[str]:
    out = []
    y = square_orbit(x)
    if unsquare_orbit(y) != x:
        _fail(out, "sqrt(x^2) != x", x)
    if orbit_ideal_good(x) != orbit_ideal_good(y):
        _fail(out, "orbit of x and of x^2 disagree", x)
    if orbit_ideal_good(unsquare_orbit(y)) != orbit_ideal_good(y):
        _fail(out, "downward direction disagrees", x)
    return out


# -- equations from the odd/even case analysis ----------------------------------------


def certified_slice(n: int, lam2: int, nu1: int, vanishing_orbit_sum: bool = False):
    """Normalized v of degree n with Sq^1(v) = (l1 a + lam2 b) v + nu1 a phi(v).

    l1 is forced to be n mod 2.  The coefficient of b^n in phi(v) is required
    to be 1, which forces the b phi(v) coefficient to vanish.  With
    ``vanishing_orbit_sum`` v must also satisfy v + phi(v) + phi^2(v) = 0.
    Returns (particular, directions) of the affine solution space, or None.
    """
    lam1 = n % 2
    rows = []
    for i in range(n + 1):
        e = 1 << i
        pe = action.phi_bits(n, e)
        img = steenrod.sq_bits(n, e, 1)
        if lam1:
            img ^= e << 1
        if lam2:
            img ^= e
        if nu1:
            img ^= pe << 1
        if vanishing_orbit_sum:
            img |= action.orbit_sum_bits(n, e) << (n + 2)
        rows.append(img)
    ker = kernel(BitMatrix(rows, 2 * n + 3))
    # constraints: coefficient of a^n, of b^n, of b^n in phi(v)
    sig = []
    for k in ker.rows:
        s = (k >> n & 1) | (k & 1) << 1 | (action.phi_bits(n, k) & 1) << 2
        sig.append(s)
    sm = BitMatrix(sig, 3)
    ok, cert = member(sm, 0b101)
    if not ok:
        return None
    particular = 0
    for j in cert:
        particular ^= ker.rows[j]
    dirs = []
    for rel in sm.rref().relations:
        vec = 0
        for j in range(rel.bit_length()):
            if rel >> j & 1:
                vec ^= ker.rows[j]
        dirs.append(vec)
    return particular, tuple(dirs)


def random_certified(rng: random.Random, max_degree: int = 20,
                     vanishing_orbit_sum: bool = False) -> HomogPoly:
    while True:
        n = rng.randint(1, max_degree)
        sl = certified_slice(n, rng.getrandbits(1), rng.getrandbits(1), vanishing_orbit_sum)
        if sl is None:
            continue
        v, dirs = sl
        for d in dirs:
            if rng.getrandbits(1):
                v ^= d
        return HomogPoly(n, v)


def sq1_case_equations(v: HomogPoly) -> list[str]:
    """Check the Kameko-split equations for a normalized, Sq^1-certified v."""
    out = []
    pv = phi(v)
    cert = sq1_coefficients(v, pv)
    if cert is None:
        _fail(out, "no Sq^1 certificate", v)
        return out
    lam1, lam2, nu1, nu2 = cert
    split = steenrod.sq1_split(v)
    x, y = split.x, split.y
    if v.degree % 2:
        if (lam1, nu2) != (1, 0):
            _fail(out, "odd case needs lambda1 = 1, nu2 = 0", v, cert)
        by = B * y
        if by != _if(lam2, by) + _if(nu1, A * phi(y)):
            _fail(out, "by = lambda2 by + nu1 a phi(y)", v, cert)
        if (y + _if(lam2, x) + _if(nu1, phi(x) + phi(y))).bits:
            _fail(out, "0 = y + lambda2 x + nu1 (phi(x) + phi(y))", v, cert)
        if not action.orbit_sum(v).bits:
            out.extend(orbit_equation(v))
    else:
        if (lam1, nu2) != (0, 0):
            _fail(out, "even case needs lambda1 = 0, nu2 = 0", v, cert)
        by = B * y
        if by != _if(lam2, by) + _if(nu1, phi(x) + B * phi(y)):
            _fail(out, "by = lambda2 by + nu1 phi(x) + nu1 b phi(y)", v, cert)
        if A * y != _if(lam2, x) + _if(nu1, A * phi(y)):
            _fail(out, "ay = lambda2 x + nu1 a phi(y)", v, cert)
    if split.closed_form != steenrod.sq1(v) or steenrod.sq1(v) != _reconstruct_sq1(v, pv, cert):
        _fail(out, "Sq^1 reconstruction", v, cert)
    return out


def _if(bit: int, term: HomogPoly) -> HomogPoly:
    return term if bit else HomogPoly.zero(term.degree)


def _reconstruct_sq1(v, pv, cert) -> HomogPoly:
    lam1, lam2, nu1, nu2 = cert
    r = HomogPoly.zero(v.degree + 1)
    for bit, term in ((lam1, A * v), (lam2, B * v), (nu1, A * pv), (nu2, B * pv)):
        if bit:
            r = r + term
    return r


def orbit_equation(v: HomogPoly) -> list[str]:
    """0 = x + phi(y) + phi^2(x) + phi^2(y) for odd v = a x^2 + b y^2 with vanishing orbit sum."""
    out = []
    split = steenrod.sq1_split(v)
    x, y = split.x, split.y
    if (x + phi(y) + phi(x, 2) + phi(y, 2)).bits:
        _fail(out, "0 = x + phi(y) + phi^2(x) + phi^2(y)", v)
    return out


@suite("sq1_case_equations")
def sq1_case_equations_suite(rng, cases, ops=Ops()):
    out = []
    for _ in range(cases):
        out.extend(sq1_case_equations(random_certified(rng)))
    return out


@suite("orbit_equation")
def orbit_equation_suite(rng, cases, ops=Ops()):
    out = []
    done = 0
    while done < cases:
        n = 2 * rng.randint(0, 9) + 1
        ker = action.orbit_sum_kernel(n)
        v = 0
        for r in ker.rows:
            if rng.getrandbits(1):
                v ^= r
        done += 1
        out.extend(orbit_equation(HomogPoly(n, v)))
    return out


def run_suites(names=None, seed: int = 0, cases: int = 1000,
               ops: Ops | None = None) -> list[SuiteResult]:
    ops = ops or Ops()
    names = list(SUITES) if not names else list(names)
    unknown = [n for n in names if n not in SUITES]
    if unknown:
        raise KeyError(f"unknown suites: {', '.join(unknown)}")
    results = []
    for name in names:
        rng = random.Random(f"{seed}:{name}")
        results.append(SuiteResult(name, cases, SUITES[name](rng, cases, ops)))
    return results
