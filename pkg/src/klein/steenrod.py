"""Total Steenrod square, its graded pieces and the Kameko maps on F2[a, b].

The total square is the ring endomorphism a -> a + a^2, b -> b + b^2.  On a
monomial it is a^i (1+a)^i b^j (1+b)^j, and by Lucas' theorem the binomial
coefficient C(i, k) is odd exactly when k is a bit-submask of i, so the
expansion only walks submasks.  For each degree n the full square of every
monomial is packed into one int (component k at offset k * stride) so that
Sq of a homogeneous element is an XOR over its set bits.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .poly import A, B, BiPoly, HomogPoly, PolyLike, clmul, spread, take_bits


def _submasks(m: int):
    s = m
    while True:
        yield s
        if s == 0:
            return
        s = (s - 1) & m


def _stride(n: int) -> int:
    return 2 * n + 2


@lru_cache(maxsize=None)
def _sq_table(n: int) -> tuple[int, ...]:
    stride = _stride(n)
    table = []
    for i in range(n + 1):
        j = n - i
        packed = 0
        for k1 in _submasks(i):
            for k2 in _submasks(j):
                packed ^= 1 << ((k1 + k2) * stride + i + k1)
        table.append(packed)
    return tuple(table)


def total_sq_packed(n: int, bits: int) -> int:
    table = _sq_table(n)
    r = 0
    i = 0
    while bits:
        if bits & 1:
            r ^= table[i]
        bits >>= 1
        i += 1
    return r


def total_sq_bits(n: int, bits: int) -> list[int]:
    """Components [Sq^0, Sq^1, ..., Sq^n] of a degree-n form as bit rows."""
    packed = total_sq_packed(n, bits)
    stride = _stride(n)
    mask = (1 << stride) - 1
    return [(packed >> (k * stride)) & mask for k in range(n + 1)]


def sq_bits(n: int, bits: int, k: int) -> int:
    """Bit row of Sq^k applied to the degree-n form ``bits``."""
    if k < 0:
        raise ValueError("negative Steenrod index")
    if k > n:
        return 0
    r = 0
    i = 0
    while bits:
        if bits & 1:
            j = n - i
            for k1 in _submasks(i):
                if k1 <= k and (k - k1) & ~j == 0:
                    r ^= 1 << (i + k1)
        bits >>= 1
        i += 1
    return r


def total_sq(f: PolyLike) -> BiPoly:
    """The total Steenrod square Sq(f)."""
    f = BiPoly.coerce(f)
    r: dict[int, int] = {}
    for n, bits in f.parts.items():
        for k, comp in enumerate(total_sq_bits(n, bits)):
            if comp:
                r[n + k] = r.get(n + k, 0) ^ comp
    return BiPoly(r)


def sq_k(f: HomogPoly, k: int) -> HomogPoly:
    """Sq^k(f): the degree n+k part of Sq(f); zero when k > n."""
    return HomogPoly(f.degree + k, sq_bits(f.degree, f.bits, k))


def sq1(f: HomogPoly) -> HomogPoly:
    return sq_k(f, 1)


# -- Kameko maps ---------------------------------------------------------------


@dataclass(frozen=True)
class KamekoDecomposition:
    """x = k1^2 + ka^2 a + kb^2 b + kab^2 ab."""

    k1: BiPoly
    ka: BiPoly
    kb: BiPoly
    kab: BiPoly

    def reconstruct(self) -> BiPoly:
        from .poly import square

        return (square(self.k1) + square(self.ka) * A + square(self.kb) * B
                + square(self.kab) * (A * B))

    def __getitem__(self, key: str) -> BiPoly:
        return {"1": self.k1, "a": self.ka, "b": self.kb, "ab": self.kab}[key]


def _kameko_homog(n: int, bits: int) -> dict[str, tuple[int, int]]:
    # bit i <-> a^i b^(n-i); the parity of i fixes the parity of n - i.
    even, odd = take_bits(bits, 0), take_bits(bits, 1)
    if n == 0:
        return {"1": (0, even)}
    if n % 2 == 0:
        return {"1": (n // 2, even), "ab": ((n - 2) // 2, odd)}
    return {"a": ((n - 1) // 2, odd), "b": ((n - 1) // 2, even)}


def kameko(x: PolyLike) -> KamekoDecomposition:
    """The unique Kameko decomposition of x, computed by exponent parity."""
    x = BiPoly.coerce(x)
    acc: dict[str, dict[int, int]] = {"1": {}, "a": {}, "b": {}, "ab": {}}
    for n, bits in x.parts.items():
        for key, (d, comp) in _kameko_homog(n, bits).items():
            if comp:
                acc[key][d] = acc[key].get(d, 0) ^ comp
    return KamekoDecomposition(*(BiPoly(acc[k]) for k in ("1", "a", "b", "ab")))


def kappa(key: str, x: PolyLike) -> BiPoly:
    """One Kameko map: key is '1', 'a', 'b' or 'ab'."""
    return kameko(x)[key]


@dataclass(frozen=True)
class Sq1Split:
    """Kameko pieces used to write Sq^1(v) in closed form.

    Odd degree: v = a x^2 + b y^2 and Sq^1(v) = a^2 x^2 + b^2 y^2.
    Even degree: v = x^2 + ab y^2 and Sq^1(v) = (a^2 b + a b^2) y^2.
    """

    parity: int
    x: HomogPoly
    y: HomogPoly
    closed_form: HomogPoly


def sq1_split(v: HomogPoly) -> Sq1Split:
    n = v.degree
    dec = _kameko_homog(n, v.bits)
    if n % 2:
        m = (n - 1) // 2
        x = HomogPoly(m, dec["a"][1])
        y = HomogPoly(m, dec["b"][1])
        closed = HomogPoly(n + 1, spread(x.bits) << 2) + HomogPoly(n + 1, spread(y.bits))
        return Sq1Split(1, x, y, closed)
    x = HomogPoly(n // 2, dec["1"][1])
    if n == 0:
        return Sq1Split(0, x, HomogPoly.zero(0), HomogPoly.zero(1))
    y = HomogPoly((n - 2) // 2, dec["ab"][1])
    # (a^2 b + a b^2) has bit row 0b110 in degree 3
    closed = HomogPoly(n + 1, clmul(0b110, spread(y.bits)))
    return Sq1Split(0, x, y, closed)
