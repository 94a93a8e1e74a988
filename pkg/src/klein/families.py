"""Admissible degree pairs of parameters and how sparse they are.

Three families of unordered pairs (m+1, n+1):

  A: (3k, 2l) with l >= 1 and 1 <= k <= 2^t, 2^t the largest power of 2 dividing l;
  B: (3i + 2^(s+r+1) - 2^(s+1), 2^(s+r+1) - 2^s) with s >= 0, r >= 1, 0 <= i < 2^(s-1);
  C: (2^j, 2^j) with j >= 0.

The bound i < 2^(s-1) is read over the rationals, so s = 0 and s = 1 both
admit only i = 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


@dataclass(frozen=True, order=True)
class DegreePair:
    """An unordered pair of parameter degrees, stored as low <= high."""

    low: int
    high: int
    families: frozenset[str] = frozenset()

    @property
    def key(self) -> tuple[int, int]:
        return self.low, self.high

    def families_str(self) -> str:
        return "|".join(sorted(self.families))


def pair_key(p: int, q: int) -> tuple[int, int]:
    return (p, q) if p <= q else (q, p)


def _two_adic(l: int) -> int:
    return (l & -l).bit_length() - 1


def family_a(bound: int):
    for l in range(1, bound // 2 + 1):
        kmax = min(1 << _two_adic(l), bound // 3)
        for k in range(1, kmax + 1):
            yield 3 * k, 2 * l


def family_b(bound: int):
    s = 0
    while 3 << s <= bound:
        r = 1
        while (1 << (s + r + 1)) - (1 << s) <= bound:
            second = (1 << (s + r + 1)) - (1 << s)
            base = (1 << (s + r + 1)) - (1 << (s + 1))
            # i < 2^(s-1) over the rationals
            imax = 0 if s <= 1 else (1 << (s - 1)) - 1
            for i in range(imax + 1):
                first = 3 * i + base
                if first > bound:
                    break
                yield first, second
            r += 1
        s += 1


def family_c(bound: int):
    j = 0
    while 1 << j <= bound:
        yield 1 << j, 1 << j
        j += 1


def admissible_pairs(bound: int) -> list[DegreePair]:
    """All admissible unordered pairs with both entries <= bound, tagged by family."""
    if bound < 1:
        raise ValueError("bound must be positive")
    tags: dict[tuple[int, int], set[str]] = {}
    for name, gen in (("A", family_a), ("B", family_b), ("C", family_c)):
        for p, q in gen(bound):
            if p <= bound and q <= bound:
                tags.setdefault(pair_key(p, q), set()).add(name)
    return [DegreePair(lo, hi, frozenset(f)) for (lo, hi), f in sorted(tags.items())]


def pair_count(r: int) -> int:
    """Ordered grid points (m, n), 0 <= m, n <= r, with (m+1, n+1) admissible."""
    return sum(1 if p.low == p.high else 2 for p in admissible_pairs(r + 1))


def pair_density(r: int) -> Fraction:
    if r < 0:
        raise ValueError("r must be nonnegative")
    return Fraction(pair_count(r), (r + 1) ** 2)


def family_c_count(r: int) -> int:
    """Number of family-C pairs (2^j, 2^j) with 2^j - 1 <= r."""
    return sum(1 for p in admissible_pairs(r + 1) if "C" in p.families)
