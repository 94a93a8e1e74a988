"""Bit-packed linear algebra over F2.

Rows are Python ints, bit j holding column j.  Elimination pivots on the
lowest set bit and always records, for every reduced row, which source rows
were added together to produce it, so membership answers come with a
certificate.
"""

from __future__ import annotations

from typing import Iterable, Sequence


def _as_int(row) -> int:
    if isinstance(row, int):
        return row
    return sum((int(c) & 1) << j for j, c in enumerate(row))


class BitMatrix:
    """A list of bit rows of common width.

    ``rref()`` returns a new, reduced matrix whose ``combos[k]`` is a bitmask
    over the rows of the original matrix that sum to ``rows[k]``.
    """

    def __init__(self, rows: Iterable = (), width: int | None = None):
        self.rows: tuple[int, ...] = tuple(_as_int(r) for r in rows)
        if width is None:
            width = max((r.bit_length() for r in self.rows), default=0)
        if any(r < 0 or r >> width for r in self.rows):
            raise ValueError(f"row does not fit width {width}")
        self.width = width
        self.reduced = False
        self.combos: tuple[int, ...] = tuple(1 << k for k in range(len(self.rows)))
        self.source: tuple[int, ...] = self.rows
        self.relations: tuple[int, ...] = ()
        self._rref: BitMatrix | None = None

    @classmethod
    def from_lists(cls, rows: Sequence[Sequence[int]], width: int | None = None) -> BitMatrix:
        if width is None:
            width = len(rows[0]) if rows else 0
        return cls(rows, width)

    def to_lists(self) -> list[list[int]]:
        return [[r >> j & 1 for j in range(self.width)] for r in self.rows]

    def __len__(self) -> int:
        return len(self.rows)

    def __iter__(self):
        return iter(self.rows)

    def __eq__(self, other):
        if not isinstance(other, BitMatrix):
            return NotImplemented
        return self.width == other.width and self.rows == other.rows

    def __repr__(self) -> str:
        body = ", ".join(format(r, f"0{self.width}b")[::-1] for r in self.rows)
        return f"BitMatrix([{body}], width={self.width})"

    def rref(self) -> BitMatrix:
        if self.reduced:
            return self
        if self._rref is not None:
            return self._rref
        pivots: dict[int, list[int]] = {}
        relations = []
        for k, r in enumerate(self.rows):
            c = 1 << k
            for p, (pr, pc) in pivots.items():
                if r & p:
                    r ^= pr
                    c ^= pc
            if not r:
                relations.append(c)
                continue
            p = r & -r
            for entry in pivots.values():
                if entry[0] & p:
                    entry[0] ^= r
                    entry[1] ^= c
            pivots[p] = [r, c]
        out = BitMatrix((), self.width)
        ordered = sorted(pivots.items())
        out.rows = tuple(r for _, (r, _) in ordered)
        out.combos = tuple(c for _, (_, c) in ordered)
        out.source = self.rows
        out.relations = tuple(relations)
        out.reduced = True
        self._rref = out
        return out

    @property
    def rank(self) -> int:
        return len(self.rref().rows)

    @property
    def pivots(self) -> tuple[int, ...]:
        """Pivot columns of the reduced form."""
        return tuple((r & -r).bit_length() - 1 for r in self.rref().rows)

    def reduce(self, v: int) -> tuple[int, int]:
        """Reduce v against the pivots; returns (remainder, combo over source rows)."""
        m = self.rref()
        c = 0
        for r, rc in zip(m.rows, m.combos):
            if v & (r & -r):
                v ^= r
                c ^= rc
        return v, c


def rref(m: BitMatrix) -> BitMatrix:
    return m.rref()


def member(m: BitMatrix, v) -> tuple[bool, tuple[int, ...] | None]:
    """Whether v lies in the row space of m.

    On success the certificate lists the indices of original rows of ``m``
    (before reduction) whose sum is v.
    """
    v = _as_int(v)
    if v < 0 or v >> m.width:
        raise ValueError(f"vector does not fit width {m.width}")
    rem, c = m.reduce(v)
    if rem:
        return False, None
    return True, tuple(k for k in range(c.bit_length()) if c >> k & 1)


def kernel(op: BitMatrix) -> BitMatrix:
    """Null space of the map x -> sum_k x_k * op.rows[k] (row-vector convention).

    The result has width ``len(op)`` and is in reduced form.
    """
    return BitMatrix(op.rref().relations, len(op.rows)).rref()


def span_elements(m: BitMatrix) -> list[int]:
    """Every vector in the row space of m (2^rank of them), zero first."""
    out = [0]
    for r in m.rref().rows:
        out += [x ^ r for x in out]
    return out


def in_span(rows: Iterable[int], v: int) -> bool:
    """Membership without certificates, for inner loops."""
    pivots: dict[int, int] = {}
    for r in rows:
        for p, pr in pivots.items():
            if r & p:
                r ^= pr
        if r:
            p = r & -r
            for q in pivots:
                if pivots[q] & p:
                    pivots[q] ^= r
            pivots[p] = r
    for p, pr in pivots.items():
        if v & p:
            v ^= pr
    return v == 0
