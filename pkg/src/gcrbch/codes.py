"""Binary linear codes: minimum distance, generalized Hamming weights, and
classification of tiny codes up to permutation equivalence."""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import permutations

import numpy as np

from . import bitlin
from .bitlin import BitMatrix

MAX_ENUM_DIM = 24
MAX_GHW_WORK = 5 * 10**7


@dataclass(frozen=True)
class BinaryCode:
    n: int
    k: int
    gen: BitMatrix
    par: BitMatrix | None = None

    def __post_init__(self):
        if self.gen.width != self.n:
            raise ValueError("generator width differs from code length")
        if bitlin.rank(self.gen.rows) != self.k or len(self.gen) != self.k:
            raise ValueError("generator must have exactly k independent rows")
        if self.par is not None:
            if self.par.width != self.n or bitlin.rank(self.par.rows) != self.n - self.k:
                raise ValueError("parity-check must have rank n - k")
            for g in self.gen.rows:
                for h in self.par.rows:
                    if (g & h).bit_count() & 1:
                        raise ValueError("generator and parity-check are not orthogonal")

    @classmethod
    def from_generator(cls, rows, n: int) -> "BinaryCode":
        basis = bitlin.rref_rows(rows)
        return cls(n, len(basis), BitMatrix(basis, n))

    @classmethod
    def from_parity_check(cls, H: BitMatrix) -> "BinaryCode":
        H_rref, r = bitlin.rref_rank(H)
        gen = _null_space(H_rref.rows, H.width)
        return cls(H.width, H.width - r, BitMatrix(gen, H.width), H_rref)

    def codewords(self) -> np.ndarray:
        """All 2^k codewords; entry ``i`` is the combination selected by the bits of ``i``."""
        if self.k > MAX_ENUM_DIM:
            raise ValueError(f"dimension {self.k} too large to enumerate")
        return _combination_table(self.gen.rows)

    def parity_check(self) -> BitMatrix:
        if self.par is not None:
            return self.par
        return BitMatrix(_null_space(self.gen.rows, self.n), self.n)

    def contains(self, word: int) -> bool:
        return bitlin.in_span(self.gen, word)

    def to_json(self) -> dict:
        return {"n": self.n, "k": self.k,
                "gen": ["0b" + format(r, f"0{self.n}b") for r in self.gen.rows]}

    @classmethod
    def from_json(cls, d: dict) -> "BinaryCode":
        n = int(d["n"])
        code = cls.from_generator([int(s, 2) for s in d["gen"]], n)
        if code.k != int(d["k"]):
            raise ValueError("declared dimension does not match generator rank")
        return code


def _combination_table(rows) -> np.ndarray:
    k = len(rows)
    table = np.zeros(1 << k, dtype=np.int64)
    for i, r in enumerate(rows):
        table[1 << i: 2 << i] = table[: 1 << i] ^ r
    return table


def _null_space(rows, n: int) -> list[int]:
    """Basis of {v : <v, row> = 0 for every row}."""
    rref = bitlin.rref_rows(rows)
    pivots = [r.bit_length() - 1 for r in rref]
    pset = set(pivots)
    out = []
    for j in range(n):
        if j in pset:
            continue
        v = 1 << j
        for p, r in zip(pivots, rref):
            if (r >> j) & 1:
                v |= 1 << p
        out.append(v)
    return out


def permute_word(word: int, perm) -> int:
    """Move coordinate ``i`` to position ``perm[i]``."""
    out = 0
    for i, p in enumerate(perm):
        if (word >> i) & 1:
            out |= 1 << p
    return out


def min_distance(C: BinaryCode) -> int:
    if C.k > MAX_ENUM_DIM:
        raise ValueError(f"k={C.k} exceeds enumeration limit {MAX_ENUM_DIM}")
    if C.k == 0:
        raise ValueError("zero code has no minimum distance")
    return int(bitlin.popcount_arr(C.codewords()[1:]).min())


def ghw(C: BinaryCode, r: int) -> int:
    """r-th generalized Hamming weight by exhaustive subcode enumeration."""
    if not 1 <= r <= C.k:
        raise ValueError(f"r={r} outside [1, {C.k}]")
    work = bitlin.count_subspaces(C.k, r)
    if work > MAX_GHW_WORK:
        raise ValueError(f"{work} subspaces of dimension {r} exceed work limit {MAX_GHW_WORK}")
    words = C.codewords()
    best = C.n
    # subcodes are images of r-dim subspaces of the message space
    for block in bitlin.iter_rref_blocks(C.k, r):
        supp = np.zeros(len(block), dtype=np.int64)
        for j in range(r):
            supp |= words[block[:, j]]
        best = min(best, int(bitlin.popcount_arr(supp).min()))
    return best


def hamming_ghw_sequence(m: int) -> list[int]:
    if not 2 <= m <= 30:
        raise ValueError(f"m={m} outside [2, 30]")
    powers = {1 << i for i in range(m)}
    return [d for d in range(1, 1 << m) if d not in powers]


def hamming_code(m: int) -> BinaryCode:
    """[2^m - 1, 2^m - 1 - m, 3] code whose parity-check columns are 1..2^m-1."""
    n = (1 << m) - 1
    H = BitMatrix(tuple(sum(((j + 1) >> i & 1) << j for j in range(n)) for i in range(m)), n)
    return BinaryCode.from_parity_check(H)


def canonical_form(C: BinaryCode) -> tuple[int, ...]:
    """Lexicographically least RREF generator over all coordinate permutations."""
    return min(_orbit(C.gen.rows, C.n))


def _orbit(rows, n):
    return {bitlin.rref_rows(permute_word(r, p) for r in rows) for p in permutations(range(n))}


def classify_small(n: int, k: int, d: int) -> tuple[list[BinaryCode], int]:
    """Representatives of the permutation-equivalence classes of [n, k, >=d] codes.

    Representatives are canonical forms, listed in increasing order.
    """
    if not (1 <= k <= n and n <= 8 and k <= 5 and d >= 1):
        raise ValueError(f"classification of [{n},{k},{d}] codes is out of range (n <= 8, k <= 5)")
    seen: set[tuple[int, ...]] = set()
    reps: list[tuple[int, ...]] = []
    for block in bitlin.iter_rref_blocks(n, k):
        for rows in block.tolist():
            key = tuple(rows)
            if key in seen:
                continue
            if int(bitlin.popcount_arr(_combination_table(rows)[1:]).min()) < d:
                continue
            orbit = _orbit(rows, n)
            seen |= orbit
            reps.append(min(orbit))
    reps.sort()
    return [BinaryCode(n, k, BitMatrix(r, n)) for r in reps], len(reps)


def equivalent(C1: BinaryCode, C2: BinaryCode) -> bool:
    return C1.n == C2.n and C1.k == C2.k and canonical_form(C1) == canonical_form(C2)


def missing_column_certificate(C: BinaryCode) -> int | None:
    """The nonzero vector absent from the parity-check columns of a [2^r-2, 2^r-2-r, 3] code."""
    r = C.n - C.k
    if C.n != (1 << r) - 2:
        return None
    cols = C.parity_check().columns()
    if 0 in cols or len(set(cols)) != len(cols):
        return None
    missing = set(range(1, 1 << r)) - set(cols)
    return missing.pop() if len(missing) == 1 else None


def dumps_classes(reps: list[BinaryCode]) -> str:
    return "\n".join(json.dumps(c.to_json()) for c in reps)


# shortened Hamming [6,3,3] and systematic [7,4,3] generators; character j is coordinate j
SHORTENED_HAMMING_633 = BinaryCode.from_generator(
    BitMatrix.from_strings(["100110", "010101", "001011"]).rows, 6)
HAMMING_743 = BinaryCode.from_generator(
    BitMatrix.from_strings(["1000110", "0100101", "0010011", "0001111"]).rows, 7)
