"""Polynomials in F2[a, b], graded by total degree.

A homogeneous element of degree n is stored as an integer whose bit i is the
coefficient of the monomial a^i b^(n-i).  With this layout multiplication of
homogeneous elements is carry-less multiplication of the bit rows,
multiplication by a is a left shift and multiplication by b leaves the row
unchanged (only the degree grows).

General elements (``BiPoly``) are finite sums of homogeneous components in
distinct degrees.  ``UniPoly`` is a univariate polynomial over F2 stored the
same way (bit k is the coefficient of t^k); it is only used for gcds.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Union

MAX_DEGREE = 64


class DegreeCapError(ValueError):
    """Raised when a degree exceeds ``MAX_DEGREE``."""


class NotASquare(ValueError):
    pass


class PolySyntaxError(ValueError):
    """Malformed polynomial text; ``pos`` is the 0-based offending column."""

    def __init__(self, message: str, text: str, pos: int):
        super().__init__(f"{message} at position {pos}: {text!r}")
        self.text = text
        self.pos = pos


# -- bit-row primitives ------------------------------------------------------


def clmul(x: int, y: int) -> int:
    """Carry-less product of two bit rows."""
    if x.bit_length() < y.bit_length():
        x, y = y, x
    r = 0
    while y:
        if y & 1:
            r ^= x
        x <<= 1
        y >>= 1
    return r


def spread(x: int) -> int:
    """Move bit i to bit 2i (the Frobenius on bit rows)."""
    return int("0".join(format(x, "b")), 2)


def take_bits(x: int, parity: int) -> int:
    """Keep the bits at positions congruent to ``parity`` mod 2, compressed."""
    s = format(x, "b")[::-1][parity::2]
    return int(s[::-1], 2) if s else 0


def reverse_bits(x: int, width: int) -> int:
    return int(format(x, f"0{width}b")[::-1], 2) if width else 0


def _check_degree(n: int) -> None:
    if n < 0:
        raise ValueError(f"negative degree {n}")
    if n > MAX_DEGREE:
        raise DegreeCapError(f"degree {n} exceeds the cap {MAX_DEGREE}")


# -- univariate ----------------------------------------------------------------


def _udivmod(a: int, b: int) -> tuple[int, int]:
    if b == 0:
        raise ZeroDivisionError("division by zero polynomial")
    db = b.bit_length()
    q = 0
    while a.bit_length() >= db:
        shift = a.bit_length() - db
        q ^= 1 << shift
        a ^= b << shift
    return q, a


def _ugcd(a: int, b: int) -> int:
    while b:
        a, b = b, _udivmod(a, b)[1]
    return a


@dataclass(frozen=True, slots=True)
class UniPoly:
    """Univariate polynomial over F2; bit k is the coefficient of t^k."""

    bits: int = 0

    @property
    def degree(self) -> int:
        return self.bits.bit_length() - 1

    def __bool__(self) -> bool:
        return self.bits != 0

    def __add__(self, other: UniPoly) -> UniPoly:
        return UniPoly(self.bits ^ other.bits)

    def __mul__(self, other: UniPoly) -> UniPoly:
        return UniPoly(clmul(self.bits, other.bits))

    def __divmod__(self, other: UniPoly) -> tuple[UniPoly, UniPoly]:
        q, r = _udivmod(self.bits, other.bits)
        return UniPoly(q), UniPoly(r)

    def __mod__(self, other: UniPoly) -> UniPoly:
        return divmod(self, other)[1]

    def gcd(self, other: UniPoly) -> UniPoly:
        return UniPoly(_ugcd(self.bits, other.bits))

    def __str__(self) -> str:
        if not self.bits:
            return "0"
        terms = []
        for k in range(self.degree, -1, -1):
            if self.bits >> k & 1:
                terms.append("1" if k == 0 else "t" if k == 1 else f"t^{k}")
        return " + ".join(terms)


# -- homogeneous -------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class HomogPoly:
    """Homogeneous element of F2[a, b]; bit i of ``bits`` is the coefficient of a^i b^(n-i)."""

    degree: int
    bits: int = 0

    def __post_init__(self):
        _check_degree(self.degree)
        if self.bits < 0 or self.bits >> (self.degree + 1):
            raise ValueError(f"bit row {self.bits:#b} does not fit degree {self.degree}")

    @classmethod
    def zero(cls, degree: int) -> HomogPoly:
        return cls(degree, 0)

    @classmethod
    def monomial(cls, i: int, j: int) -> HomogPoly:
        """The monomial a^i b^j."""
        return cls(i + j, 1 << i)

    @classmethod
    def from_coeffs(cls, coeffs: Iterable[int]) -> HomogPoly:
        coeffs = list(coeffs)
        if not coeffs:
            raise ValueError("a degree-n element needs n+1 coefficients")
        return cls(len(coeffs) - 1, sum((c & 1) << i for i, c in enumerate(coeffs)))

    @property
    def coeffs(self) -> tuple[int, ...]:
        return tuple(self.bits >> i & 1 for i in range(self.degree + 1))

    def coefficient(self, i: int) -> int:
        """Coefficient of a^i b^(n-i)."""
        return self.bits >> i & 1

    def monomials(self) -> Iterator[tuple[int, int]]:
        """Exponent pairs (i, j) of the monomials present, by decreasing i."""
        for i in range(self.degree, -1, -1):
            if self.bits >> i & 1:
                yield i, self.degree - i

    def is_zero(self) -> bool:
        return self.bits == 0

    def __bool__(self) -> bool:
        return self.bits != 0

    def __add__(self, other):
        if isinstance(other, HomogPoly):
            if other.degree != self.degree:
                return BiPoly.coerce(self) + other
            return HomogPoly(self.degree, self.bits ^ other.bits)
        return NotImplemented

    __sub__ = __add__

    def __mul__(self, other):
        if isinstance(other, HomogPoly):
            return HomogPoly(self.degree + other.degree, clmul(self.bits, other.bits))
        return NotImplemented

    def __pow__(self, e: int) -> HomogPoly:
        if e < 0:
            raise ValueError("negative exponent")
        r = HomogPoly(0, 1)
        base = self
        while e:
            if e & 1:
                r = r * base
            e >>= 1
            if e:
                base = base * base
        return r

    def to_bipoly(self) -> BiPoly:
        return BiPoly({self.degree: self.bits})

    def __str__(self) -> str:
        return render(self)

    def __repr__(self) -> str:
        return f"HomogPoly({self.degree}, {render(self)!r})"


ONE = HomogPoly(0, 1)
A = HomogPoly(1, 0b10)
B = HomogPoly(1, 0b01)


# -- general -----------------------------------------------------------------


PolyLike = Union["BiPoly", HomogPoly, str, int]


class BiPoly:
    """An element of F2[a, b] as a mapping degree -> nonzero bit row."""

    __slots__ = ("_parts",)

    def __init__(self, parts: Mapping[int, int] | None = None):
        clean = {}
        for d, bits in (parts or {}).items():
            if bits:
                _check_degree(d)
                if bits < 0 or bits >> (d + 1):
                    raise ValueError(f"bit row {bits:#b} does not fit degree {d}")
                clean[d] = bits
        self._parts = dict(sorted(clean.items()))

    @classmethod
    def coerce(cls, f: PolyLike) -> BiPoly:
        if isinstance(f, BiPoly):
            return f
        if isinstance(f, HomogPoly):
            return f.to_bipoly()
        if isinstance(f, str):
            return parse(f)
        if isinstance(f, int) and f in (0, 1):
            return cls({0: f})
        raise TypeError(f"cannot interpret {f!r} as a polynomial")

    @classmethod
    def from_homog(cls, parts: Iterable[HomogPoly]) -> BiPoly:
        r: dict[int, int] = {}
        for h in parts:
            r[h.degree] = r.get(h.degree, 0) ^ h.bits
        return cls(r)

    @property
    def parts(self) -> dict[int, int]:
        return dict(self._parts)

    def degrees(self) -> list[int]:
        return list(self._parts)

    def component(self, d: int) -> HomogPoly:
        return HomogPoly(d, self._parts.get(d, 0))

    def components(self) -> list[HomogPoly]:
        return [HomogPoly(d, bits) for d, bits in self._parts.items()]

    def is_zero(self) -> bool:
        return not self._parts

    def __bool__(self) -> bool:
        return bool(self._parts)

    def is_homogeneous(self) -> bool:
        return len(self._parts) <= 1

    def homogeneous(self, degree: int | None = None) -> HomogPoly:
        """The element as a HomogPoly; the zero polynomial needs ``degree``."""
        if len(self._parts) > 1:
            raise ValueError(f"{self} is not homogeneous")
        if not self._parts:
            if degree is None:
                raise ValueError("the zero polynomial has no intrinsic degree")
            return HomogPoly.zero(degree)
        (d, bits), = self._parts.items()
        if degree is not None and degree != d:
            raise ValueError(f"{self} has degree {d}, not {degree}")
        return HomogPoly(d, bits)

    @property
    def max_degree(self) -> int:
        return max(self._parts) if self._parts else -1

    def __add__(self, other):
        try:
            other = BiPoly.coerce(other)
        except TypeError:
            return NotImplemented
        r = dict(self._parts)
        for d, bits in other._parts.items():
            r[d] = r.get(d, 0) ^ bits
        return BiPoly(r)

    __radd__ = __add__
    __sub__ = __add__
    __rsub__ = __add__

    def __mul__(self, other):
        try:
            other = BiPoly.coerce(other)
        except TypeError:
            return NotImplemented
        r: dict[int, int] = {}
        for d1, x in self._parts.items():
            for d2, y in other._parts.items():
                r[d1 + d2] = r.get(d1 + d2, 0) ^ clmul(x, y)
        return BiPoly(r)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> BiPoly:
        if e < 0:
            raise ValueError("negative exponent")
        r = BiPoly({0: 1})
        for _ in range(e):
            r = r * self
        return r

    def __eq__(self, other):
        if isinstance(other, (BiPoly, HomogPoly)):
            return self._parts == BiPoly.coerce(other)._parts
        if isinstance(other, int) and other in (0, 1):
            return self._parts == BiPoly.coerce(other)._parts
        return NotImplemented

    def __hash__(self):
        return hash(tuple(self._parts.items()))

    def __str__(self) -> str:
        return render(self)

    def __repr__(self) -> str:
        return f"BiPoly({render(self)!r})"


ZERO = BiPoly()


# -- operations ----------------------------------------------------------------


def add(f: PolyLike, g: PolyLike) -> BiPoly:
    return BiPoly.coerce(f) + BiPoly.coerce(g)


def mul(f: PolyLike, g: PolyLike) -> BiPoly:
    return BiPoly.coerce(f) * BiPoly.coerce(g)


def square(f: PolyLike) -> BiPoly:
    """f^2, computed by doubling every exponent."""
    f = BiPoly.coerce(f)
    return BiPoly({2 * d: spread(bits) for d, bits in f.parts.items()})


def sqrt(f: PolyLike) -> BiPoly:
    """The unique g with g^2 = f; raises ``NotASquare`` if there is none."""
    f = BiPoly.coerce(f)
    r = {}
    for d, bits in f.parts.items():
        if d % 2 or take_bits(bits, 1):
            raise NotASquare(f"{f} is not a square")
        r[d // 2] = take_bits(bits, 0)
    return BiPoly(r)


def dehomogenize(f: HomogPoly) -> tuple[int, UniPoly]:
    """Return (e, u) with f = a^e * homogenize(u) and u(t) = f(1, t)."""
    if f.is_zero():
        raise ValueError("cannot dehomogenize the zero polynomial")
    u = reverse_bits(f.bits, f.degree + 1)
    return f.degree - (u.bit_length() - 1), UniPoly(u)


def homogenize(u: UniPoly, degree: int | None = None) -> HomogPoly:
    """The form of the given degree (default deg u) whose value at a=1 is u."""
    n = u.degree if degree is None else degree
    if n < u.degree:
        raise ValueError(f"cannot homogenize a degree-{u.degree} polynomial to degree {n}")
    return HomogPoly(n, reverse_bits(u.bits, n + 1))


def gcd_bits(n: int, f: int, m: int, g: int) -> tuple[int, int]:
    """gcd of nonzero forms (n, f) and (m, g) as (degree, bits)."""
    uf = reverse_bits(f, n + 1)
    ug = reverse_bits(g, m + 1)
    e = min(n - uf.bit_length(), m - ug.bit_length()) + 1
    h = _ugcd(uf, ug)
    k = h.bit_length() - 1
    return k + e, reverse_bits(h, k + 1) << e


def gcd_homog(f: HomogPoly, g: HomogPoly) -> HomogPoly:
    """Greatest common divisor of two nonzero homogeneous elements."""
    if f.is_zero() or g.is_zero():
        raise ValueError("gcd_homog needs nonzero inputs")
    return HomogPoly(*gcd_bits(f.degree, f.bits, g.degree, g.bits))


def coprime(f: HomogPoly, g: HomogPoly) -> bool:
    return gcd_homog(f, g).degree == 0


def divide_homog(f: HomogPoly, g: HomogPoly) -> HomogPoly:
    """Exact quotient f / g; raises ``ValueError`` if g does not divide f."""
    if g.is_zero():
        raise ZeroDivisionError("division by zero polynomial")
    if f.is_zero():
        if f.degree < g.degree:
            raise ValueError("degree of divisor exceeds degree of dividend")
        return HomogPoly.zero(f.degree - g.degree)
    q, r = _udivmod(f.bits, g.bits)
    d = f.degree - g.degree
    if r or d < 0 or q >> (d + 1):
        raise ValueError(f"{render(g)} does not divide {render(f)}")
    return HomogPoly(d, q)


# -- text form -------------------------------------------------------------------


def _monomial_str(i: int, j: int) -> str:
    parts = []
    if i:
        parts.append("a" if i == 1 else f"a^{i}")
    if j:
        parts.append("b" if j == 1 else f"b^{j}")
    return "*".join(parts) or "1"


def render(f: PolyLike) -> str:
    """Canonical text: degrees descending, then a-exponent descending."""
    if isinstance(f, HomogPoly):
        f = f.to_bipoly()
    elif not isinstance(f, BiPoly):
        f = BiPoly.coerce(f)
    terms = []
    for d in sorted(f.parts, reverse=True):
        h = f.component(d)
        terms.extend(_monomial_str(i, j) for i, j in h.monomials())
    return " + ".join(terms) if terms else "0"


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, message: str, pos: int | None = None):
        raise PolySyntaxError(message, self.text, self.pos if pos is None else pos)

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def uint(self) -> int:
        self.skip()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            self.error("expected an exponent")
        return int(self.text[start:self.pos])

    def factor(self) -> tuple[int, int]:
        c = self.peek()
        start = self.pos
        if c == "1":
            self.pos += 1
            if self.pos < len(self.text) and self.text[self.pos].isdigit():
                self.error("unexpected digit", self.pos)
            return 0, 0
        if c not in ("a", "b"):
            self.error(f"unexpected {c!r}" if c else "unexpected end of input")
        self.pos += 1
        e = 1
        if self.peek() == "^":
            self.pos += 1
            e = self.uint()
        if e > MAX_DEGREE:
            self.error(f"exponent {e} exceeds the degree cap {MAX_DEGREE}", start)
        return (e, 0) if c == "a" else (0, e)

    def term(self) -> tuple[int, int]:
        start = self.pos
        i, j = self.factor()
        while self.peek() == "*":
            self.pos += 1
            di, dj = self.factor()
            i, j = i + di, j + dj
        if i + j > MAX_DEGREE:
            self.error(f"term degree {i + j} exceeds the degree cap {MAX_DEGREE}", start)
        return i, j

    def poly(self) -> BiPoly:
        if self.peek() == "0":
            self.pos += 1
            if self.peek():
                self.error(f"unexpected {self.peek()!r}")
            return BiPoly()
        parts: dict[int, int] = {}
        while True:
            i, j = self.term()
            parts[i + j] = parts.get(i + j, 0) ^ (1 << i)
            c = self.peek()
            if not c:
                return BiPoly(parts)
            if c != "+":
                self.error(f"unexpected {c!r}")
            self.pos += 1


def parse(text: str) -> BiPoly:
    """Parse ``poly := '0' | term ('+' term)*`` with factors a, b, a^k, b^k, 1."""
    return _Parser(text).poly()


def parse_homog(text: str) -> HomogPoly:
    f = parse(text)
    if not f.is_homogeneous() or f.is_zero():
        raise ValueError(f"{text!r} is not a nonzero homogeneous polynomial")
    return f.homogeneous()
