"""Slow reference implementations used to check the bit-packed library.

Polynomials here are frozensets of exponent pairs (i, j) meaning a^i b^j, and
addition is symmetric difference.  Nothing in this module calls into the
library except the two converters at the top.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from math import comb

from klein.poly import BiPoly

Mono = tuple[int, int]
Poly = frozenset


def from_lib(f) -> Poly:
    f = BiPoly.coerce(f)
    out = set()
    for n, bits in f.parts.items():
        for i in range(n + 1):
            if bits >> i & 1:
                out.add((i, n - i))
    return frozenset(out)


def to_lib(p: Poly) -> BiPoly:
    parts: dict[int, int] = {}
    for i, j in p:
        parts[i + j] = parts.get(i + j, 0) ^ (1 << i)
    return BiPoly(parts)


def add(*ps: Poly) -> Poly:
    out: set = set()
    for p in ps:
        out ^= set(p)
    return frozenset(out)


def mul(p: Poly, q: Poly) -> Poly:
    out: set = set()
    for (i, j), (k, l) in itertools.product(p, q):
        out ^= {(i + k, j + l)}
    return frozenset(out)


def power(p: Poly, e: int) -> Poly:
    r = frozenset({(0, 0)})
    for _ in range(e):
        r = mul(r, p)
    return r


def binomial_power(x: Poly, y: Poly, e: int) -> Poly:
    """(x + y)^e expanded with odd binomial coefficients."""
    out: set = set()
    for k in range(e + 1):
        if comb(e, k) % 2:
            out ^= set(mul(power(x, k), power(y, e - k)))
    return frozenset(out)


A = frozenset({(1, 0)})
B = frozenset({(0, 1)})


def substitute(p: Poly, img_a: Poly, img_b: Poly) -> Poly:
    out: set = set()
    for i, j in p:
        out ^= set(mul(power(img_a, i), power(img_b, j)))
    return frozenset(out)


def phi(p: Poly) -> Poly:
    return substitute(p, B, add(A, B))


def total_sq(p: Poly) -> Poly:
    """Sq(a^i b^j) = sum C(i,k) C(j,l) a^(i+k) b^(j+l)."""
    out: set = set()
    for i, j in p:
        for k in range(i + 1):
            for l in range(j + 1):
                if comb(i, k) * comb(j, l) % 2:
                    out ^= {(i + k, j + l)}
    return frozenset(out)


def sq_k(p: Poly, n: int, k: int) -> Poly:
    """Degree n+k part of Sq(p) for p homogeneous of degree n."""
    return frozenset(m for m in total_sq(p) if sum(m) == n + k)


def all_forms(n: int, nonzero: bool = True):
    """Every homogeneous form of degree n as a monomial set."""
    monos = [(i, n - i) for i in range(n + 1)]
    for mask in range(1 if nonzero else 0, 1 << (n + 1)):
        yield frozenset(m for k, m in enumerate(monos) if mask >> k & 1)


def divides(h: Poly, f: Poly) -> bool:
    """Exact divisibility of homogeneous forms by lex long division (a > b)."""
    if not h:
        return not f
    lead_h = max(h)
    f = set(f)
    while f:
        lead_f = max(f)
        if lead_f[0] < lead_h[0] or lead_f[1] < lead_h[1]:
            return False
        shift = (lead_f[0] - lead_h[0], lead_f[1] - lead_h[1])
        f ^= {(i + shift[0], j + shift[1]) for i, j in h}
    return True


def degree(p: Poly) -> int:
    return sum(next(iter(p)))


def common_factor_degree(f: Poly, g: Poly) -> int:
    """Degree of gcd(f, g) by trying every candidate divisor, largest first."""
    for k in range(min(degree(f), degree(g)), 0, -1):
        for h in all_forms(k):
            if divides(h, f) and divides(h, g):
                return k
    return 0


def rank(vectors) -> int:
    """GF(2) rank of int bit-vectors by the textbook xor-basis."""
    by_top: dict[int, int] = {}
    for v in vectors:
        while v:
            top = v.bit_length() - 1
            if top not in by_top:
                by_top[top] = v
                break
            v ^= by_top[top]
    return len(by_top)


def bits_of(p: Poly) -> int:
    return sum(1 << i for i, _ in p)


def ideal_component(gens: list[Poly], d: int) -> list[int]:
    """Spanning bit rows of the degree-d part of the ideal: monomial multiples."""
    rows = []
    for g in gens:
        e = d - degree(g)
        if e < 0:
            continue
        for i in range(e + 1):
            rows.append(bits_of(mul(g, frozenset({(i, e - i)}))))
    return rows


def in_ideal(gens: list[Poly], f: Poly) -> bool:
    """Membership of an inhomogeneous f, checked one degree at a time."""
    for d in {sum(m) for m in f}:
        part = frozenset(m for m in f if sum(m) == d)
        rows = ideal_component(gens, d)
        if rank(rows + [bits_of(part)]) != rank(rows):
            return False
    return True


def ci_hilbert(d1: int, d2: int, t: int) -> int:
    """Coefficient of s^t in (1 - s^d1)(1 - s^d2) / (1 - s)^2."""
    def h(k):  # dim of degree-k forms
        return k + 1 if k >= 0 else 0

    return h(t) - h(t - d1) - h(t - d2) + h(t - d1 - d2)


# -- admissible degree pairs, decided per pair --------------------------------------------


def in_family_a(p: int, q: int) -> bool:
    if p % 3 or q % 2:
        return False
    k, l = p // 3, q // 2
    t = 0
    while l % (2 ** (t + 1)) == 0:
        t += 1
    return 1 <= k <= 2 ** t


def in_family_b(p: int, q: int) -> bool:
    for s in range(0, q.bit_length() + 1):
        for r in range(1, q.bit_length() + 1):
            if 2 ** (s + r + 1) - 2 ** s != q:
                continue
            rest = p - (2 ** (s + r + 1) - 2 ** (s + 1))
            if rest < 0 or rest % 3:
                continue
            i = rest // 3
            if Fraction(i) < Fraction(2) ** (s - 1):
                return True
    return False


def in_family_c(p: int, q: int) -> bool:
    return p == q and p & (p - 1) == 0


def oracle_families(p: int, q: int) -> set[str]:
    out = set()
    for name, test in (("A", in_family_a), ("B", in_family_b), ("C", in_family_c)):
        if test(p, q) or test(q, p):
            out.add(name)
    return out


def oracle_pairs(bound: int) -> dict[tuple[int, int], set[str]]:
    out = {}
    for p in range(1, bound + 1):
        for q in range(p, bound + 1):
            fam = oracle_families(p, q)
            if fam:
                out[(p, q)] = fam
    return out
