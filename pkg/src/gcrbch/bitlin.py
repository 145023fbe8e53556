"""GF(2) linear algebra on bit-vectors packed into Python ints.

A vector of width ``w`` is an int whose bit ``i`` is coordinate ``i``.  Row
echelon forms are keyed on the most significant set bit of each row.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator, Sequence

import numpy as np

MAX_WIDTH = 4096
MAX_SPAN_RANK = 24


@dataclass(frozen=True)
class BitMatrix:
    rows: tuple[int, ...]
    width: int

    def __post_init__(self):
        if not 0 <= self.width <= MAX_WIDTH:
            raise ValueError(f"width {self.width} outside [0, {MAX_WIDTH}]")
        limit = 1 << self.width
        for r in self.rows:
            if not 0 <= r < limit:
                raise ValueError(f"row {r:#x} does not fit in width {self.width}")

    @classmethod
    def of(cls, rows: Iterable[int], width: int) -> "BitMatrix":
        return cls(tuple(int(r) for r in rows), width)

    @classmethod
    def from_strings(cls, rows: Sequence[str]) -> "BitMatrix":
        """Build from strings like ``"110"``; character ``j`` is coordinate ``j``."""
        width = len(rows[0]) if rows else 0
        packed = []
        for s in rows:
            if len(s) != width:
                raise ValueError("rows of unequal length")
            packed.append(sum(1 << j for j, ch in enumerate(s) if ch == "1"))
        return cls(tuple(packed), width)

    def __len__(self):
        return len(self.rows)

    def column(self, j: int) -> int:
        """Column ``j`` packed as an int over the row index."""
        return sum(((r >> j) & 1) << i for i, r in enumerate(self.rows))

    def columns(self) -> list[int]:
        return [self.column(j) for j in range(self.width)]

    def transpose(self) -> "BitMatrix":
        return BitMatrix(tuple(self.columns()), len(self.rows))


def reduce_vector(basis: dict[int, int], v: int) -> int:
    """Reduce ``v`` against an echelon basis mapping leading bit -> row."""
    while v:
        lead = v.bit_length() - 1
        row = basis.get(lead)
        if row is None:
            return v
        v ^= row
    return 0


def _echelon(rows: Iterable[int]) -> dict[int, int]:
    basis: dict[int, int] = {}
    for r in rows:
        r = reduce_vector(basis, r)
        if r:
            basis[r.bit_length() - 1] = r
    return basis


def rank(rows: Iterable[int]) -> int:
    return len(_echelon(rows))


def rref_rows(rows: Iterable[int]) -> tuple[int, ...]:
    """Canonical reduced row-echelon basis, rows sorted by decreasing pivot."""
    basis = _echelon(rows)
    leads = sorted(basis, reverse=True)
    # back-substitute so every pivot bit is cleared in all other rows
    for lead in leads:
        row = basis[lead]
        for other in leads:
            if other != lead and (basis[other] >> lead) & 1:
                basis[other] ^= row
    return tuple(basis[lead] for lead in leads)


def rref_rank(M: BitMatrix) -> tuple[BitMatrix, int]:
    """Reduced row-echelon form (zero rows dropped) and rank."""
    rows = rref_rows(M.rows)
    return BitMatrix(rows, M.width), len(rows)


def in_span(M: BitMatrix, v: int, width: int | None = None) -> bool:
    if width is not None and width != M.width:
        raise ValueError(f"width mismatch: vector {width}, matrix {M.width}")
    if v >> M.width:
        raise ValueError(f"vector {v:#x} wider than matrix width {M.width}")
    return reduce_vector(_echelon(M.rows), v) == 0


class SpanTester:
    """Incremental elimination basis for repeated membership queries."""

    def __init__(self, rows: Iterable[int] = ()):
        self._basis: dict[int, int] = {}
        for r in rows:
            self.add(r)

    def add(self, v: int) -> bool:
        """Insert ``v``; return True if it enlarged the span."""
        v = reduce_vector(self._basis, v)
        if v:
            self._basis[v.bit_length() - 1] = v
            return True
        return False

    def __contains__(self, v: int) -> bool:
        return reduce_vector(self._basis, v) == 0

    @property
    def rank(self) -> int:
        return len(self._basis)


def solve_combination(rows: Sequence[int], v: int) -> int | None:
    """Return a mask ``c`` with XOR of ``rows[i]`` over set bits of ``c`` equal to ``v``.

    ``None`` when ``v`` is outside the row space.
    """
    # track, for each basis row, which original rows it combines
    basis: dict[int, tuple[int, int]] = {}
    for i, r in enumerate(rows):
        tag = 1 << i
        while r:
            lead = r.bit_length() - 1
            if lead not in basis:
                basis[lead] = (r, tag)
                break
            br, bt = basis[lead]
            r ^= br
            tag ^= bt
    combo = 0
    while v:
        lead = v.bit_length() - 1
        if lead not in basis:
            return None
        br, bt = basis[lead]
        v ^= br
        combo ^= bt
    return combo


def enumerate_span(M: BitMatrix) -> np.ndarray | set[int]:
    """All GF(2) combinations of the rows of ``M``.

    For width <= 24 the result is a boolean membership table of length
    ``2**width`` indexed by packed vector value; wider matrices get a set.
    """
    basis = rref_rows(M.rows)
    r = len(basis)
    if r > MAX_SPAN_RANK:
        raise ValueError(f"span of rank {r} too large to enumerate (limit {MAX_SPAN_RANK})")
    # Gray-code walk: step i flips the basis row at the lowest set bit of i
    values = np.zeros(1 << r, dtype=np.int64 if M.width < 63 else object)
    cur = 0
    for i in range(1, 1 << r):
        cur ^= basis[(i & -i).bit_length() - 1]
        values[i] = cur
    if M.width <= MAX_SPAN_RANK:
        table = np.zeros(1 << M.width, dtype=bool)
        table[values.astype(np.int64)] = True
        return table
    return {int(x) for x in values}


def span_members(table_or_set) -> set[int]:
    """Normalize an :func:`enumerate_span` result to a set of ints."""
    if isinstance(table_or_set, np.ndarray):
        return {int(x) for x in np.flatnonzero(table_or_set)}
    return set(table_or_set)


def count_subspaces(n: int, r: int) -> int:
    """Gaussian binomial coefficient [n choose r] at q = 2."""
    if r < 0 or r > n:
        return 0
    num = den = 1
    for i in range(r):
        num *= (1 << (n - i)) - 1
        den *= (1 << (i + 1)) - 1
    return num // den


def iter_rref_blocks(n: int, r: int) -> Iterator[np.ndarray]:
    """Yield every r-dimensional subspace of GF(2)^n exactly once, as RREF bases.

    Each yielded block is an int64 array of shape (N, r) for one pivot
    pattern; row ``j`` of a basis has pivot ``p_j`` with ``p_0 > p_1 > ...``,
    and free bits only below its pivot at non-pivot positions.
    """
    if n > 62:
        raise ValueError("n too large for packed int64 enumeration")
    if r == 0:
        yield np.zeros((1, 0), dtype=np.int64)
        return
    for low_first in combinations(range(n), r):
        pivots = low_first[::-1]
        pset = set(pivots)
        free = [[q for q in range(p) if q not in pset] for p in pivots]
        nfree = sum(len(f) for f in free)
        if nfree > 26:
            raise ValueError("pivot pattern with too many free bits")
        assign = np.arange(1 << nfree, dtype=np.int64)
        block = np.empty((1 << nfree, r), dtype=np.int64)
        shift = 0
        for j, p in enumerate(pivots):
            row = np.full(1 << nfree, 1 << p, dtype=np.int64)
            for q in free[j]:
                row |= ((assign >> shift) & 1) << q
                shift += 1
            block[:, j] = row
        yield block


def popcount_arr(a: np.ndarray) -> np.ndarray:
    """Vectorized popcount of non-negative int64 values."""
    a = a.astype(np.uint64)
    out = np.zeros(a.shape, dtype=np.int64)
    for _ in range(8):
        out += _POP8[(a & np.uint64(0xFF)).astype(np.intp)]
        a = a >> np.uint64(8)
    return out


_POP8 = np.array([bin(i).count("1") for i in range(256)], dtype=np.int64)
