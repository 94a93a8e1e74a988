"""The C3-action on F2[a, b] generated by phi: a -> b, b -> a + b.

Endomorphisms sending a and b to linear forms are applied degree by degree
through a cached matrix (the image of every monomial a^i b^(n-i)); any other
substitution falls back to expanding powers of the images.

In characteristic 2 the group order 3 is 1, so the Reynolds operator is the
plain orbit sum f + phi(f) + phi^2(f) with no 1/3 factor.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .linalg import BitMatrix, kernel
from .poly import A, B, BiPoly, HomogPoly, PolyLike, clmul


@lru_cache(maxsize=None)
def _linear_images(img_a: int, img_b: int, n: int) -> tuple[int, ...]:
    # image of a^i b^(n-i) is img_a^i * img_b^(n-i)
    pa = [1]
    pb = [1]
    for _ in range(n):
        pa.append(clmul(pa[-1], img_a))
        pb.append(clmul(pb[-1], img_b))
    return tuple(clmul(pa[i], pb[n - i]) for i in range(n + 1))


def apply_linear_bits(img_a: int, img_b: int, n: int, bits: int) -> int:
    images = _linear_images(img_a, img_b, n)
    r = 0
    i = 0
    while bits:
        if bits & 1:
            r ^= images[i]
        bits >>= 1
        i += 1
    return r


@dataclass(frozen=True)
class RingEndo:
    """The ring endomorphism of F2[a, b] determined by the images of a and b."""

    image_a: BiPoly
    image_b: BiPoly

    def __post_init__(self):
        object.__setattr__(self, "image_a", BiPoly.coerce(self.image_a))
        object.__setattr__(self, "image_b", BiPoly.coerce(self.image_b))

    @property
    def is_linear(self) -> bool:
        return set(self.image_a.degrees()) <= {1} and set(self.image_b.degrees()) <= {1}

    def __call__(self, f: PolyLike):
        return apply(self, f)

    def matrix(self, n: int) -> BitMatrix:
        """Rows are the images of a^i b^(n-i), i = 0..n (linear endomorphisms only)."""
        if not self.is_linear:
            raise ValueError("only endomorphisms sending a, b to linear forms have degree matrices")
        ia = self.image_a.component(1).bits
        ib = self.image_b.component(1).bits
        return BitMatrix(_linear_images(ia, ib, n), n + 1)


def apply(endo: RingEndo, f: PolyLike):
    """endo(f).  A HomogPoly stays a HomogPoly when endo is linear."""
    if isinstance(f, HomogPoly) and endo.is_linear:
        ia = endo.image_a.component(1).bits
        ib = endo.image_b.component(1).bits
        return HomogPoly(f.degree, apply_linear_bits(ia, ib, f.degree, f.bits))
    f = BiPoly.coerce(f)
    if endo.is_linear:
        ia = endo.image_a.component(1).bits
        ib = endo.image_b.component(1).bits
        return BiPoly({d: apply_linear_bits(ia, ib, d, bits) for d, bits in f.parts.items()})
    return substitute(endo, f)


def substitute(endo: RingEndo, f: PolyLike) -> BiPoly:
    """General substitution a -> image_a, b -> image_b by expanding powers."""
    f = BiPoly.coerce(f)
    top = max((d for d in f.degrees()), default=0)
    pa = [BiPoly({0: 1})]
    pb = [BiPoly({0: 1})]
    for _ in range(top):
        pa.append(pa[-1] * endo.image_a)
        pb.append(pb[-1] * endo.image_b)
    r = BiPoly()
    for h in f.components():
        for i, j in h.monomials():
            r = r + pa[i] * pb[j]
    return r


PHI = RingEndo(B.to_bipoly(), (A + B).to_bipoly())
PHI_A = B.bits
PHI_B = (A + B).bits


def phi(f: PolyLike, times: int = 1):
    """Apply the generator phi ``times`` times (mod 3)."""
    for _ in range(times % 3):
        f = apply(PHI, f)
    return f


def phi_bits(n: int, bits: int) -> int:
    return apply_linear_bits(PHI_A, PHI_B, n, bits)


def orbit_sum_bits(n: int, bits: int) -> int:
    p1 = phi_bits(n, bits)
    return bits ^ p1 ^ phi_bits(n, p1)


@dataclass(frozen=True)
class Orbit:
    """The C3-orbit {x, phi(x), phi^2(x)} of a nonzero homogeneous x."""

    base: HomogPoly
    elements: tuple[HomogPoly, ...]

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, x) -> bool:
        return x in self.elements


def orbit(x: HomogPoly) -> Orbit:
    if x.is_zero():
        raise ValueError("the orbit of zero is not considered")
    px = phi(x)
    ppx = phi(px)
    elements = [x]
    for y in (px, ppx):
        if y not in elements:
            elements.append(y)
    return Orbit(x, tuple(elements))


def orbit_sum(x: HomogPoly) -> HomogPoly:
    """x + phi(x) + phi^2(x)."""
    return HomogPoly(x.degree, orbit_sum_bits(x.degree, x.bits))


def reynolds(f: PolyLike):
    """Orbit sum of f; the result is phi-invariant."""
    if isinstance(f, HomogPoly):
        return orbit_sum(f)
    f = BiPoly.coerce(f)
    return BiPoly({d: orbit_sum_bits(d, bits) for d, bits in f.parts.items()})


def is_invariant(f: PolyLike) -> bool:
    return phi(f) == f


def invariants_of_degree(d: int) -> BitMatrix:
    """Reduced basis (bit rows of width d+1) of the phi-fixed degree-d elements."""
    if d < 0:
        raise ValueError("negative degree")
    images = _linear_images(PHI_A, PHI_B, d)
    op = BitMatrix((img ^ (1 << i) for i, img in enumerate(images)), d + 1)
    return kernel(op)


def orbit_sum_kernel(d: int) -> BitMatrix:
    """Reduced basis of ker(1 + phi + phi^2) on the degree-d component."""
    rows = (orbit_sum_bits(d, 1 << i) for i in range(d + 1))
    return kernel(BitMatrix(rows, d + 1))
