"""BCH(2, m) as a column system over GF(2^m) and as a binary code.

Column ``j`` of the double-error-correcting check matrix is the pair
``(alpha^j, alpha^(3j))``.  A pair ``(a, b)`` packs into a 2m-bit vector as
``a | (b << m)``; the binary expansion uses the polynomial-basis coordinates.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from . import gf2m
from .bitlin import BitMatrix
from .codes import BinaryCode
from .gf2m import FieldSpec, Felt


class SyndromePair(NamedTuple):
    a: Felt
    b: Felt

    def pack(self, m: int) -> int:
        return self.a | (self.b << m)

    @classmethod
    def unpack(cls, v: int, m: int) -> "SyndromePair":
        return cls(v & ((1 << m) - 1), v >> m)

    def to_json(self) -> list[str]:
        return [hex(self.a), hex(self.b)]


@dataclass(frozen=True)
class ColumnSystem:
    field: FieldSpec
    columns: tuple[SyndromePair, ...]

    @property
    def n(self) -> int:
        return len(self.columns)

    @property
    def m(self) -> int:
        return self.field.m

    @property
    def width(self) -> int:
        return 2 * self.field.m

    def vectors(self) -> np.ndarray:
        """Packed 2m-bit column vectors in generator-power order."""
        return np.array([c.pack(self.m) for c in self.columns], dtype=np.int64)

    def index_of(self, x: Felt) -> int:
        """Column index j with alpha^j = x."""
        for j, c in enumerate(self.columns):
            if c.a == x:
                return j
        raise ValueError(f"{x:#x} is not a nonzero field element")

    def to_json(self) -> dict:
        return {"field": self.field.to_json(), "columns": [c.to_json() for c in self.columns]}


def build_columns(f: FieldSpec) -> ColumnSystem:
    if f.m > 16:
        raise ValueError(f"m={f.m} too large for an explicit column system (max 16)")
    cols = []
    x = 1
    for _ in range(f.order):
        cols.append(SyndromePair(x, gf2m.cube(f, x)))
        x = gf2m.mul(f, x, f.generator)
    return ColumnSystem(f, tuple(cols))


def binary_parity_check(f: FieldSpec, e: int = 2) -> BitMatrix:
    """The (m*e) x n binary expansion of rows alpha^(ij), i = 1, 3, ..., 2e-1."""
    if e not in (1, 2):
        raise ValueError("only e = 1 or e = 2 supported")
    if f.m > 12:
        raise ValueError(f"m={f.m} too large for a binary parity-check (max 12)")
    n = f.order
    rows = []
    for i in range(1, 2 * e, 2):
        entries = []
        x = 1
        step = gf2m.pow(f, f.generator, i)
        for _ in range(n):
            entries.append(x)
            x = gf2m.mul(f, x, step)
        for bit in range(f.m):
            rows.append(sum(((v >> bit) & 1) << j for j, v in enumerate(entries)))
    return BitMatrix(tuple(rows), n)


def bch_code(f: FieldSpec, e: int) -> BinaryCode:
    if f.m > 6:
        raise ValueError(f"m={f.m} too large to materialize the code (max 6)")
    return BinaryCode.from_parity_check(binary_parity_check(f, e))


def syndrome(cs: ColumnSystem, word: int, n: int | None = None) -> SyndromePair:
    """Sum of the columns at the support of ``word`` (bit j is position j)."""
    if n is not None and n != cs.n:
        raise ValueError(f"word length {n} differs from code length {cs.n}")
    if word < 0 or word >> cs.n:
        raise ValueError(f"word does not fit in length {cs.n}")
    a = b = 0
    j = 0
    while word:
        if word & 1:
            a ^= cs.columns[j].a
            b ^= cs.columns[j].b
        word >>= 1
        j += 1
    return SyndromePair(a, b)
