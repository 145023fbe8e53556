"""Exact covering engine for BCH(2, m) syndrome targets.

Targets and columns live in GF(2^m)^2, packed as 2m-bit ints.  A target
tuple is covered by a set of columns when every target lies in their GF(2)
span; this depends only on the subspace the targets span, which is what the
symmetry-reduced searches enumerate.
"""

from __future__ import annotations

import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations
from math import comb, factorial
from typing import Callable, Sequence

import numpy as np

from . import _kernels, bitlin, gf2m
from .bch import ColumnSystem, SyndromePair, build_columns
from .bitlin import BitMatrix, SpanTester
from .codes import BinaryCode
from .gf2m import FieldSpec

MAX_CERT_WORK = 10**8
MAX_LITERAL_TUPLES = 1 << 21
MAX_GENERIC_WORK = 1 << 31


def _pack(cs: ColumnSystem, targets: Sequence[SyndromePair]) -> np.ndarray:
    return np.array([SyndromePair(*p).pack(cs.m) for p in targets], dtype=np.int64)


def _full_rank(cs: ColumnSystem) -> int:
    return bitlin.rank(int(v) for v in cs.vectors())


def min_cover(cs: ColumnSystem, targets: Sequence[SyndromePair]) -> tuple[int | None, tuple[int, ...]]:
    """Least number of distinct columns whose span holds every target, with a witness.

    The witness is the lexicographically first index set of that size.
    ``(None, ())`` when the targets lie outside the span of all columns,
    which only happens for m = 2.
    """
    packed = _pack(cs, targets)
    t, w = _kernels.min_cover(cs.vectors(), packed, cs.width, cs.n)
    if t < 0:
        return None, ()
    return t, tuple(int(i) for i in w)


# -- certificates -----------------------------------------------------------

@dataclass
class CoverCertificate:
    field: FieldSpec
    targets: list[SyndromePair]
    radius_excluded: int
    subsets_checked: int
    verdict: str
    witness_subset: tuple[int, ...] | None = None

    def to_json(self) -> dict:
        return {
            "field": self.field.to_json(),
            "targets": [SyndromePair(*p).to_json() for p in self.targets],
            "t": self.radius_excluded,
            "verdict": self.verdict,
            "subsets_checked": self.subsets_checked,
            "witness": list(self.witness_subset) if self.witness_subset is not None else None,
        }

    @classmethod
    def from_json(cls, d: dict) -> "CoverCertificate":
        f = FieldSpec.from_json(d["field"])
        targets = [SyndromePair(gf2m.parse_felt(f, a), gf2m.parse_felt(f, b)) for a, b in d["targets"]]
        w = d.get("witness")
        return cls(f, targets, int(d["t"]), int(d["subsets_checked"]), d["verdict"],
                   tuple(int(i) for i in w) if w is not None else None)


def certify_no_cover(cs: ColumnSystem, targets: Sequence[SyndromePair], t: int) -> CoverCertificate:
    """Enumerate every t-subset of columns; verdict is whether any spans all targets."""
    work = comb(cs.n, t)
    if work > MAX_CERT_WORK:
        raise ValueError(f"C({cs.n}, {t}) = {work} subsets exceeds work bound {MAX_CERT_WORK}")
    targets = [SyndromePair(*p) for p in targets]
    w, checked = _kernels.first_cover(cs.vectors(), _pack(cs, targets), t, cs.width, prune=False)
    if w is None:
        return CoverCertificate(cs.field, targets, t, checked, "no-cover-at-t")
    return CoverCertificate(cs.field, targets, t, checked, "covered", tuple(int(i) for i in w))


def recheck_certificate(cert: CoverCertificate) -> bool:
    """Independent pure-Python re-verification using incremental elimination."""
    cs = build_columns(cert.field)
    m, t = cs.m, cert.radius_excluded
    packed = [p.pack(m) for p in cert.targets]
    cols = [c.pack(m) for c in cs.columns]

    def spans(subset) -> bool:
        basis = BitMatrix(tuple(cols[i] for i in subset), cs.width)
        return all(bitlin.in_span(basis, v) for v in packed)

    if cert.verdict == "covered":
        w = cert.witness_subset
        if w is None or len(set(w)) != t or not all(0 <= i < cs.n for i in w):
            return False
        return spans(w)
    if cert.verdict != "no-cover-at-t" or cert.subsets_checked != comb(cs.n, t):
        return False
    n_checked = 0
    for subset in combinations(range(cs.n), t):
        tester = SpanTester(cols[i] for i in subset)
        if all(v in tester for v in packed):
            return False
        n_checked += 1
    return n_checked == cert.subsets_checked


# -- symmetry ---------------------------------------------------------------

def symmetry_tables(cs: ColumnSystem) -> np.ndarray:
    """Images of every packed vector under (a, b) -> (l a^(2^s), l^3 b^(2^s)).

    Row g = s_frob * n + j uses scale l = alpha^j; rows include the identity.
    Each map permutes the columns {(x, x^3)}, so covering is invariant.
    """
    f, m = cs.field, cs.m
    allv = np.arange(1 << (2 * m), dtype=np.int64)
    a, b = allv & f.mask, allv >> m
    rows = []
    for s in range(m):
        fa, fb = gf2m.pow_arr(f, a, 1 << s), gf2m.pow_arr(f, b, 1 << s)
        for j in range(f.order):
            lam = int(f.exp_table[j])
            rows.append(gf2m.mul_arr(f, fa, lam) | (gf2m.mul_arr(f, fb, gf2m.cube(f, lam)) << m))
    return np.array(rows, dtype=np.int64)


def orbit_representatives(dim_space: int, r: int, tables: np.ndarray | None,
                          progress: Callable[[int], None] | None = None) -> tuple[list[tuple[int, ...]], int]:
    """RREF bases of r-dim subspaces of GF(2)^dim_space, one per orbit.

    ``tables`` holds group-element images of every vector (None: trivial
    group).  Returns representatives in enumeration order and the number of
    subspaces enumerated.
    """
    seen: set[tuple[int, ...]] = set()
    reps: list[tuple[int, ...]] = []
    total = 0
    for block in bitlin.iter_rref_blocks(dim_space, r):
        for rows in block.tolist():
            total += 1
            key = tuple(rows)
            if key in seen:
                continue
            reps.append(key)
            if tables is None:
                continue
            images = tables[:, rows]
            for img in images.tolist():
                seen.add(bitlin.rref_rows(img))
            if progress is not None and len(reps) % 500 == 0:
                progress(len(reps))
    return reps, total


@dataclass
class GcrResult:
    value: int
    worst_targets: list[SyndromePair]
    orbits_visited: int
    subspaces_enumerated: int
    tuples_evaluated: int = 0
    symmetry: bool = True
    stats: dict = field(default_factory=dict)


_GCR_LIMITS = {(3, 1), (3, 2), (3, 3), (4, 1), (4, 2), (4, 3), (5, 1), (5, 2)}


def _batch_worker(args):
    cols, tuples, width, tmax = args
    return _kernels.min_cover_batch(cols, tuples, width, tmax)


def _min_cover_many(cs: ColumnSystem, tuples: np.ndarray, jobs: int) -> np.ndarray:
    cols = cs.vectors()
    if jobs <= 1 or len(tuples) < 2 * jobs:
        return _kernels.min_cover_batch(cols, tuples, cs.width, cs.n)
    chunks = np.array_split(tuples, jobs)
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        parts = list(pool.map(_batch_worker, [(cols, c, cs.width, cs.n) for c in chunks]))
    return np.concatenate(parts)


def gcr_search(cs: ColumnSystem, r: int, symmetry: bool = True, jobs: int = 1,
               progress: Callable[[str], None] | None = None) -> GcrResult:
    """Exact r-th generalized covering radius of BCH(2, m) with search statistics."""
    m = cs.m
    if (m, r) not in _GCR_LIMITS:
        est = bitlin.count_subspaces(2 * m, r) // max(1, cs.n * m)
        raise ValueError(f"gcr for m={m}, r={r} is out of range "
                         f"(about {est} orbits of target subspaces; supported: r<=3 at m<=4, r<=2 at m=5)")
    if symmetry:
        tables = symmetry_tables(cs)
        reps, total = orbit_representatives(
            2 * m, r, tables,
            None if progress is None else (lambda k: progress(f"orbits found: {k}")))
        tuples = np.array(reps, dtype=np.int64)
    else:
        n_tuples = 1 << (2 * m * r)
        if n_tuples > MAX_LITERAL_TUPLES:
            raise ValueError(f"{n_tuples} target tuples without symmetry exceeds {MAX_LITERAL_TUPLES}")
        grids = np.indices((1 << (2 * m),) * r, dtype=np.int64)
        tuples = grids.reshape(r, -1).T.copy()
        total = 0
    values = _min_cover_many(cs, tuples, jobs)
    if np.any(values < 0):
        raise ValueError("some targets lie outside the column span")
    worst = int(np.argmax(values))
    return GcrResult(
        value=int(values[worst]),
        worst_targets=[SyndromePair.unpack(int(v), m) for v in tuples[worst]],
        orbits_visited=len(tuples) if symmetry else 0,
        subspaces_enumerated=total,
        tuples_evaluated=len(tuples),
        symmetry=symmetry,
        stats={"histogram": {int(k): int(c) for k, c in zip(*np.unique(values, return_counts=True))}},
    )


def gcr_exact(cs: ColumnSystem, r: int, symmetry: bool = True, jobs: int = 1) -> int:
    return gcr_search(cs, r, symmetry=symmetry, jobs=jobs).value


def gcr_literal(C: BinaryCode, r: int) -> int:
    """max over (v_1..v_r) in (F_2^n)^r of min over C^r of |union supp(v_i - c_i)|."""
    words = C.codewords()
    n_tuples = 1 << (C.n * r)
    if n_tuples * len(words) ** r > MAX_GENERIC_WORK // 8:
        raise ValueError("literal covering-radius evaluation too large")
    # all codeword r-tuples, as an (|C|^r, r) array
    cw = np.stack(np.meshgrid(*([words] * r), indexing="ij"), -1).reshape(-1, r)
    best = 0
    chunk = max(1, (1 << 20) // len(cw))
    allv = np.arange(1 << C.n, dtype=np.int64)
    flat = np.arange(n_tuples, dtype=np.int64)
    for start in range(0, n_tuples, chunk):
        idx = flat[start: start + chunk]
        vs = [allv[(idx >> (C.n * i)) & ((1 << C.n) - 1)] for i in range(r)]
        union = np.zeros((len(idx), len(cw)), dtype=np.int64)
        for i in range(r):
            union |= vs[i][:, None] ^ cw[None, :, i]
        best = max(best, int(bitlin.popcount_arr(union).min(axis=1).max()))
    return best


# -- the code pair BCH(2,m) inside BCH(1,m) ---------------------------------

def second_coordinate_tables(cs: ColumnSystem) -> np.ndarray:
    """Group action restricted to targets (0, beta): beta -> l^3 beta^(2^s)."""
    f = cs.field
    allb = np.arange(f.q, dtype=np.int64)
    rows = []
    for s in range(f.m):
        fb = gf2m.pow_arr(f, allb, 1 << s)
        for j in range(f.order):
            lam3 = gf2m.cube(f, int(f.exp_table[j]))
            rows.append(gf2m.mul_arr(f, fb, lam3))
    return np.array(rows, dtype=np.int64)


def d_cc(cs: ColumnSystem, r: int, symmetry: bool = True) -> int:
    """d_r(BCH(2,m), BCH(1,m)) via targets (0, alpha_i) with independent alpha_i."""
    m = cs.m
    if not 1 <= r <= min(4, m) or m > 5:
        raise ValueError(f"d_cc needs 1 <= r <= min(4, m) and m <= 5 (got m={m}, r={r})")
    tables = second_coordinate_tables(cs) if symmetry else None
    reps, _ = orbit_representatives(m, r, tables)
    tuples = np.array(reps, dtype=np.int64) << m
    values = _kernels.min_cover_batch(cs.vectors(), tuples, cs.width, cs.n)
    return int(values.max())


def d_cc_generic(C: BinaryCode, Csup: BinaryCode, r: int) -> int:
    """Literal max-min over coset tuples independent modulo C of the union support size."""
    if C.n != Csup.n or not all(Csup.contains(g) for g in C.gen.rows):
        raise ValueError("C is not contained in Csup")
    gap = Csup.k - C.k
    if gap < r:
        raise ValueError(f"dimension gap {gap} is smaller than r={r}")
    if C.n > 16 or Csup.k > 12:
        raise ValueError("d_cc_generic limited to n <= 16 and dim Csup <= 12")
    words = C.codewords()
    n_tuples = comb((1 << gap) - 1, r)
    if n_tuples * len(words) ** r > MAX_GENERIC_WORK:
        raise ValueError(f"about {n_tuples * len(words) ** r} support evaluations; too large")
    tester = SpanTester(C.gen.rows)
    complement = [g for g in Csup.gen.rows if tester.add(g)]

    def rep(mask: int) -> int:
        v = 0
        for i, g in enumerate(complement):
            if (mask >> i) & 1:
                v ^= g
        return v

    reps = [rep(mask) for mask in range(1 << gap)]
    best = 0
    for masks in combinations(range(1, 1 << gap), r):
        if bitlin.rank(masks) < r:
            continue
        union = np.zeros((len(words),) * r, dtype=np.int64)
        for i, mk in enumerate(masks):
            shape = [1] * r
            shape[i] = len(words)
            union = union | (reps[mk] ^ words).reshape(shape)
        best = max(best, int(bitlin.popcount_arr(union.ravel()).min()))
    return best


# -- bounds -----------------------------------------------------------------

@dataclass(frozen=True)
class BoundReport:
    kind: str
    k_or_r: int
    m: int | None
    bound: int | None
    hypothesis_holds: bool

    def to_json(self) -> dict:
        return {"kind": self.kind, "k": self.k_or_r, "m": self.m, "bound": self.bound,
                "hypothesis_holds": self.hypothesis_holds}


def supercode_bound(r: int, dims: tuple[int, int], ghw_of_sup: int, m: int | None = None) -> BoundReport:
    """rho_r(C) >= d_r(C') when dim C' - dim C >= r; ``dims`` is (dim C, dim C')."""
    holds = dims[1] - dims[0] >= r
    return BoundReport("supercode", r, m, ghw_of_sup if holds else None, holds)


def counting_bound(k: int, m: int) -> BoundReport:
    """rho_k >= 2k whenever 2^m (2k-1)! >= 2^(k(2k-1))."""
    if k < 1:
        raise ValueError("k must be positive")
    holds = (1 << m) * factorial(2 * k - 1) >= 1 << (k * (2 * k - 1))
    return BoundReport("counting", k, m, 2 * k if holds else None, holds)


def threshold_upper(k: int) -> int:
    """Least m with sqrt(2^m) >= (k-1) 2^(k+1) + 3, beyond which rho_k <= 2k + 1."""
    if k < 2:
        raise ValueError("k must be at least 2")
    need = ((k - 1) * (1 << (k + 1)) + 3) ** 2
    return (need - 1).bit_length()


def threshold_report(k: int, m: int) -> BoundReport:
    holds = m >= threshold_upper(k)
    return BoundReport("threshold", k, m, 2 * k + 1 if holds else None, holds)


def log_progress(msg: str) -> None:
    print(msg, file=sys.stderr, flush=True)
