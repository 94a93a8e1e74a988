"""Homogeneous ideals of F2[a, b], handled one degree at a time.

The degree-d component of J = <g_1, ..., g_r> is spanned by the products
m * g_k over monomials m of degree d - deg(g_k); in the bit-row layout the
product a^s b^t * g is just ``g.bits << s``.  Each component is reduced once
and cached together with the origin (generator, shift) of every spanning row,
so membership tests return explicit coefficient polynomials.
"""

from __future__ import annotations

import json
import warnings
from dataclasses import dataclass
from typing import Iterable, Literal

from .action import phi, phi_bits, reynolds
from .linalg import BitMatrix, member, span_elements
from .poly import BiPoly, HomogPoly, PolyLike, coprime, render
from .steenrod import total_sq

RepType = Literal["trivial", "nontrivial"]

_POLY = {"type": "string", "minLength": 1}

IDEAL_SCHEMA = {
    "type": "object",
    "properties": {"generators": {"type": "array", "items": _POLY, "minItems": 1}},
    "required": ["generators"],
    "additionalProperties": False,
}

MEMBERSHIP_SCHEMA = {
    "type": "object",
    "properties": {
        "member": {"type": "boolean"},
        "coefficients": {"type": ["array", "null"], "items": _POLY},
    },
    "required": ["member", "coefficients"],
}


class IdealError(ValueError):
    pass


def _as_generator(g) -> HomogPoly:
    if isinstance(g, HomogPoly):
        h = g
    else:
        f = BiPoly.coerce(g)
        if not f.is_homogeneous():
            raise IdealError(f"generator {render(f)} is not homogeneous "
                             f"(components in degrees {f.degrees()})")
        if f.is_zero():
            raise IdealError("generators must be nonzero")
        h = f.homogeneous()
    if h.is_zero():
        raise IdealError("generators must be nonzero")
    if h.degree == 0:
        raise IdealError("generators must have positive degree")
    return h


@dataclass(frozen=True)
class Membership:
    """Outcome of a membership test; truthy iff f lies in the ideal.

    When true, ``coefficients[k]`` is a polynomial c_k with
    f = sum_k c_k * generators[k].
    """

    member: bool
    coefficients: tuple[BiPoly, ...] | None = None

    def __bool__(self) -> bool:
        return self.member

    def to_json(self) -> dict:
        return {
            "member": self.member,
            "coefficients": None if self.coefficients is None
            else [render(c) for c in self.coefficients],
        }


class GradedIdeal:
    """An ideal generated by finitely many homogeneous elements of positive degree."""

    def __init__(self, generators: Iterable[PolyLike]):
        gens = tuple(_as_generator(g) for g in generators)
        if not gens:
            raise IdealError("an ideal needs at least one generator")
        self.generators = gens
        self._components: dict[int, BitMatrix] = {}
        self._origins: dict[int, tuple[tuple[int, int], ...]] = {}

    @classmethod
    def from_json(cls, data: str | dict) -> GradedIdeal:
        if isinstance(data, str):
            data = json.loads(data)
        return cls(data["generators"])

    def to_json(self) -> dict:
        return {"generators": [render(g) for g in self.generators]}

    @property
    def degrees(self) -> tuple[int, ...]:
        return tuple(g.degree for g in self.generators)

    def __repr__(self) -> str:
        return "<" + ", ".join(render(g) for g in self.generators) + ">"

    def component(self, d: int) -> BitMatrix:
        """Reduced basis of the degree-d component J_d."""
        if d < 0:
            raise ValueError("negative degree")
        m = self._components.get(d)
        if m is None:
            rows = []
            origins = []
            for k, g in enumerate(self.generators):
                for s in range(d - g.degree + 1):
                    rows.append(g.bits << s)
                    origins.append((k, s))
            m = BitMatrix(rows, d + 1).rref()
            self._origins[d] = tuple(origins)
            self._components[d] = m
        return m

    def dim(self, d: int) -> int:
        return self.component(d).rank

    def quotient_dim(self, d: int) -> int:
        return d + 1 - self.dim(d)

    def contains(self, f: PolyLike) -> Membership:
        f = BiPoly.coerce(f)
        coeffs: list[dict[int, int]] = [{} for _ in self.generators]
        for h in f.components():
            ok, cert = member(self.component(h.degree), h.bits)
            if not ok:
                return Membership(False)
            origins = self._origins[h.degree]
            for idx in cert:
                k, s = origins[idx]
                e = h.degree - self.generators[k].degree
                coeffs[k][e] = coeffs[k].get(e, 0) ^ (1 << s)
        return Membership(True, tuple(BiPoly(c) for c in coeffs))

    def __contains__(self, f) -> bool:
        return self.contains(f).member

    def minimal_generators(self) -> tuple[HomogPoly, ...]:
        """A minimal generating subset, keeping earlier generators within a degree."""
        kept: list[HomogPoly] = []
        for g in sorted(self.generators, key=lambda h: h.degree):
            if not kept or g not in GradedIdeal(kept):
                kept.append(g)
        return tuple(kept)

    def minimalized(self) -> GradedIdeal:
        gens = self.minimal_generators()
        return self if gens == self.generators else GradedIdeal(gens)


def component(J: GradedIdeal, d: int) -> BitMatrix:
    return J.component(d)


def contains(J: GradedIdeal, f: PolyLike) -> Membership:
    return J.contains(f)


def finite_quotient(x: HomogPoly, y: HomogPoly) -> bool:
    """Whether F2[a,b]/<x, y> vanishes in degree deg x + deg y - 1.

    For coprime x, y the quotient is a complete intersection whose top
    nonzero degree is deg x + deg y - 2; if x, y share a factor h the
    quotient surjects onto F2[a,b]/<h>, which is nonzero in every degree.
    """
    d = x.degree + y.degree - 1
    return GradedIdeal([x, y]).quotient_dim(d) == 0


def _parameter_pair(J: GradedIdeal) -> tuple[HomogPoly, HomogPoly]:
    gens = J.minimal_generators()
    if len(gens) != 2:
        raise IdealError(f"{J!r} has {len(gens)} minimal generators, a parameter ideal needs 2")
    return gens


def is_parameter_ideal(J: GradedIdeal) -> bool:
    """Whether the two minimal generators of J are coprime."""
    x, y = _parameter_pair(J)
    by_gcd = coprime(x, y)
    if by_gcd != finite_quotient(x, y):
        raise AssertionError(f"gcd and quotient tests disagree on {J!r}")
    return by_gcd


def socle_bound(J: GradedIdeal) -> int:
    """d1 + d2 for a two-generated ideal."""
    x, y = _parameter_pair(J)
    return x.degree + y.degree


@dataclass(frozen=True)
class Closure:
    """Result of a closure test; ``certificates[k]`` belongs to generator k."""

    closed: bool
    certificates: tuple[Membership, ...]

    def __bool__(self) -> bool:
        return self.closed

    def to_json(self) -> dict:
        return {"closed": self.closed, "certificates": [c.to_json() for c in self.certificates]}


def is_steenrod_closed(J: GradedIdeal) -> Closure:
    """Sq(g) in J for every generator g.

    This is enough for the whole ideal: Sq is a ring homomorphism, so
    Sq(sum f_k g_k) = sum Sq(f_k) Sq(g_k).
    """
    certs = []
    for g in J.generators:
        m = J.contains(total_sq(g))
        certs.append(m)
        if not m:
            return Closure(False, tuple(certs))
    return Closure(True, tuple(certs))


def is_c3_invariant(J: GradedIdeal) -> bool:
    return all(J.contains(phi(g)) for g in J.generators)


@dataclass(frozen=True)
class CogeneratorModule:
    """J / <a,b>J with one representative per basis element.

    ``action`` is the matrix of phi on the chosen basis: row k lists the
    coordinates of phi(representatives[k]); ``None`` when J is not phi-stable.
    """

    representatives: tuple[HomogPoly, ...]
    action: tuple[int, ...] | None

    @property
    def dimension(self) -> int:
        return len(self.representatives)

    @property
    def degrees(self) -> tuple[int, ...]:
        return tuple(r.degree for r in self.representatives)

    def action_lists(self) -> list[list[int]] | None:
        if self.action is None:
            return None
        n = self.dimension
        return [[row >> j & 1 for j in range(n)] for row in self.action]


def _matmul(x: tuple[int, ...], y: tuple[int, ...]) -> tuple[int, ...]:
    # row-vector convention: (xy)_k = sum_j x[k]_j * y[j]
    out = []
    for row in x:
        acc = 0
        for j, yr in enumerate(y):
            if row >> j & 1:
                acc ^= yr
        out.append(acc)
    return tuple(out)


def _quotient_basis(J: GradedIdeal, d: int) -> tuple[BitMatrix, BitMatrix]:
    """(mJ_d, reps) where reps spans a complement of mJ_d in J_d, fully reduced."""
    if d >= 1:
        prev = J.component(d - 1).rows
        mj = BitMatrix([r << 1 for r in prev] + list(prev), d + 1).rref()
    else:
        mj = BitMatrix((), d + 1).rref()
    rems = [mj.reduce(r)[0] for r in J.component(d).rows]
    return mj, BitMatrix([r for r in rems if r], d + 1).rref()


def cogenerators(J: GradedIdeal) -> CogeneratorModule:
    if not is_parameter_ideal(J):
        raise IdealError(f"{J!r} is not a parameter ideal")
    reps: list[HomogPoly] = []
    blocks: list[tuple[BitMatrix, BitMatrix]] = []
    for d in sorted(set(J.minimalized().degrees)):
        mj, q = _quotient_basis(J, d)
        blocks.append((mj, q))
        reps.extend(HomogPoly(d, r) for r in q.rows)
    if len(reps) != 2:
        raise AssertionError(f"cogenerator module of {J!r} has dimension {len(reps)}")
    action: list[int] | None = []
    offset = 0
    for mj, q in blocks:
        for r in q.rows:
            d = q.width - 1
            img, _ = mj.reduce(phi_bits(d, r))
            ok, cert = member(q, img)
            if not ok:
                action = None
                break
            action.append(sum(1 << (offset + k) for k in cert))
        if action is None:
            break
        offset += len(q.rows)
    return CogeneratorModule(tuple(reps), None if action is None else tuple(action))


def rep_type(J: GradedIdeal) -> RepType:
    """Whether phi acts trivially on J / <a,b>J (J must be an invariant parameter ideal)."""
    mod = cogenerators(J)
    if mod.action is None:
        raise IdealError(f"{J!r} is not C3-invariant")
    m = mod.action
    if _matmul(m, _matmul(m, m)) != (1, 2):
        raise AssertionError(f"phi acts with order not dividing 3 on {J!r}")
    return "trivial" if m == (1, 2) else "nontrivial"


def invariant_generating_system(J: GradedIdeal) -> tuple[HomogPoly, HomogPoly] | None:
    """Two phi-invariant generators of J, or None if the cogenerator action is nontrivial.

    The invariant generators are orbit sums of cogenerator representatives;
    they generate J by the graded Nakayama lemma.
    """
    if rep_type(J) == "nontrivial":
        return None
    x, y = (reynolds(r) for r in cogenerators(J).representatives)
    K = GradedIdeal([x, y])
    if not (coprime(x, y) and equal_ideals(J, K)):
        raise AssertionError(f"orbit sums of cogenerators fail to generate {J!r}")
    return x, y


def has_invariant_parameter(J: GradedIdeal) -> bool:
    """Brute force: is some phi-invariant x in J part of a generating pair <x, y> = J?

    Only the minimal generator degrees can host such x and y, and every
    element of those components is tried.
    """
    from .action import invariants_of_degree

    x0, y0 = _parameter_pair(J)
    degrees = sorted({x0.degree, y0.degree})
    for dx in degrees:
        comp = J.component(dx)
        for xb in span_elements(invariants_of_degree(dx)):
            if not xb or not member(comp, xb)[0]:
                continue
            x = HomogPoly(dx, xb)
            dy = y0.degree if dx == x0.degree else x0.degree
            for yb in span_elements(J.component(dy)):
                if not yb:
                    continue
                y = HomogPoly(dy, yb)
                if coprime(x, y) and equal_ideals(J, GradedIdeal([x, y])):
                    return True
    return False


def equal_ideals(J: GradedIdeal, K: GradedIdeal, fallback_degree: int = 16) -> bool:
    """Compare components degree by degree.

    For parameter ideals every component above d1 + d2 - 2 is full, so
    checking up to the larger d1 + d2 of the two decides equality.
    Other ideals are compared up to ``fallback_degree`` with a warning.
    """
    try:
        if is_parameter_ideal(J) and is_parameter_ideal(K):
            bound = max(socle_bound(J), socle_bound(K))
        else:
            raise IdealError("not parameter ideals")
    except IdealError:
        warnings.warn(f"comparing {J!r} and {K!r} only up to degree {fallback_degree}",
                      stacklevel=2)
        bound = fallback_degree
    return all(J.component(d).rows == K.component(d).rows for d in range(bound + 1))
