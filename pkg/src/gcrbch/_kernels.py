"""Subset-cover kernels: numba-compiled with a pure-numpy fallback.

Both paths answer the same question: given packed column vectors and packed
targets, which is the lexicographically first t-subset of columns whose
GF(2) span contains every target?  Set ``GCRBCH_DISABLE_NUMBA=1`` to force
the numpy path (the import of numba is then skipped entirely).

``checked`` counts t-subsets in lexicographic order up to and including the
witness, or all C(n, t) of them when there is none.  Subtrees skipped by
pruning are counted as if they had been visited, so the count does not
depend on the path or on pruning.
"""

from __future__ import annotations

import os
from itertools import combinations, islice
from math import comb

import numpy as np

DISABLED = os.environ.get("GCRBCH_DISABLE_NUMBA", "").lower() in ("1", "true", "yes")

try:
    if DISABLED:
        raise ImportError
    from numba import njit
    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised only without numba
    HAVE_NUMBA = False

BACKEND = "numba" if HAVE_NUMBA else "numpy"


_BINOM_CAP = 1 << 62


def _binom_table(n: int) -> np.ndarray:
    # saturated: counts past 2^62 only arise for enumerations that never finish
    out = np.zeros((n + 2, n + 2), dtype=np.int64)
    for a in range(n + 2):
        for b in range(a + 1):
            out[a, b] = min(comb(a, b), _BINOM_CAP)
    return out


def _bit_rank(vals, width) -> int:
    basis = [0] * width
    r = 0
    for v in vals:
        v = int(v)
        for b in range(width - 1, -1, -1):
            if not (v >> b) & 1:
                continue
            if basis[b] == 0:
                basis[b] = v
                r += 1
                break
            v ^= basis[b]
    return r


# -- numpy path -------------------------------------------------------------

def first_cover_numpy(cols: np.ndarray, targets: np.ndarray, t: int, width: int,
                      prune: bool = True) -> tuple[np.ndarray | None, int]:
    """Vectorized search over chunks of t-subsets; ``prune`` is accepted and ignored."""
    cols = np.asarray(cols, dtype=np.int64)
    targets = np.asarray(targets, dtype=np.int64)
    n = len(cols)
    if t == 0:
        return (np.zeros(0, np.int64), 1) if not targets.any() else (None, 1)
    if t > n:
        return None, 0
    chunk = max(1, (1 << 18) >> t)
    it = combinations(range(n), t)
    done = 0
    while True:
        block = list(islice(it, chunk))
        if not block:
            return None, done
        idx = np.array(block, dtype=np.int64)
        vals = cols[idx]
        spans = np.zeros((len(idx), 1 << t), dtype=np.int64)
        for i in range(t):
            spans[:, 1 << i: 2 << i] = spans[:, : 1 << i] ^ vals[:, i: i + 1]
        ok = np.ones(len(idx), dtype=bool)
        for tv in targets:
            ok &= (spans == tv).any(axis=1)
        hits = np.flatnonzero(ok)
        if len(hits):
            h = int(hits[0])
            return idx[h], done + h + 1
        done += len(idx)


def min_cover_numpy(cols, targets, width: int, tmax: int) -> tuple[int, np.ndarray | None]:
    """Least t <= tmax and its witness; (-1, None) if none."""
    start = _bit_rank(targets, width)
    for t in range(start, tmax + 1):
        w, _ = first_cover_numpy(cols, targets, t, width)
        if w is not None:
            return t, w
    return -1, None


def min_cover_batch_numpy(cols, tuples, width: int, tmax: int) -> np.ndarray:
    tuples = np.asarray(tuples, dtype=np.int64)
    out = np.empty(len(tuples), dtype=np.int64)
    for i, tup in enumerate(tuples):
        out[i] = min_cover_numpy(cols, tup, width, tmax)[0]
    return out


# -- numba path -------------------------------------------------------------

if HAVE_NUMBA:

    @njit(cache=True)
    def _insert(basis, v, width):
        b = width - 1
        while v != 0 and b >= 0:
            if (v >> b) & 1:
                if basis[b] == 0:
                    basis[b] = v
                    return 1
                v ^= basis[b]
            b -= 1
        return 0

    @njit(cache=True)
    def _reduces_to_zero(basis, v, width):
        b = width - 1
        while v != 0 and b >= 0:
            if (v >> b) & 1:
                if basis[b] == 0:
                    return False
                v ^= basis[b]
            b -= 1
        return v == 0

    @njit(cache=True)
    def _deficiency(basis, targets, width, scratch):
        # dimension of span(targets) modulo span(basis)
        scratch[:] = basis
        extra = 0
        for i in range(len(targets)):
            extra += _insert(scratch, targets[i], width)
        return extra

    @njit(cache=True)
    def _first_cover_nb(cols, targets, t, width, prune, binom, out_idx):
        n = len(cols)
        if t == 0:
            for i in range(len(targets)):
                if targets[i] != 0:
                    return -1, 1
            return 0, 1
        if t > n:
            return -1, 0
        bases = np.zeros((t + 1, width), dtype=np.int64)
        scratch = np.zeros(width, dtype=np.int64)
        idx = np.empty(t, dtype=np.int64)
        checked = 0
        d = 0
        idx[0] = -1
        while d >= 0:
            idx[d] += 1
            if idx[d] > n - (t - d):
                d -= 1
                continue
            bases[d + 1, :] = bases[d, :]
            _insert(bases[d + 1], cols[idx[d]], width)
            if d == t - 1:
                checked += 1
                ok = True
                for i in range(len(targets)):
                    if not _reduces_to_zero(bases[t], targets[i], width):
                        ok = False
                        break
                if ok:
                    out_idx[:t] = idx
                    return t, checked
                continue
            if prune:
                if _deficiency(bases[d + 1], targets, width, scratch) > t - d - 1:
                    # every completion of this prefix fails; count them as checked
                    checked += binom[n - idx[d] - 1, t - d - 1]
                    continue
            d += 1
            idx[d] = idx[d - 1]
        return -1, checked

    @njit(cache=True)
    def _min_cover_nb(cols, targets, width, tmax, binom, out_idx):
        scratch = np.zeros(width, dtype=np.int64)
        start = 0
        for i in range(len(targets)):
            start += _insert(scratch, targets[i], width)
        for t in range(start, tmax + 1):
            found, _ = _first_cover_nb(cols, targets, t, width, True, binom, out_idx)
            if found >= 0:
                return t
        return -1

    @njit(cache=True)
    def _min_cover_batch_nb(cols, tuples, width, tmax, binom):
        out = np.empty(tuples.shape[0], dtype=np.int64)
        out_idx = np.empty(max(tmax, 1), dtype=np.int64)
        for i in range(tuples.shape[0]):
            out[i] = _min_cover_nb(cols, tuples[i], width, tmax, binom, out_idx)
        return out

    def first_cover_numba(cols, targets, t: int, width: int,
                          prune: bool = True) -> tuple[np.ndarray | None, int]:
        cols = np.ascontiguousarray(cols, dtype=np.int64)
        targets = np.ascontiguousarray(targets, dtype=np.int64)
        out_idx = np.empty(max(t, 1), dtype=np.int64)
        found, checked = _first_cover_nb(cols, targets, t, width, prune,
                                         _binom_table(len(cols)), out_idx)
        if found < 0:
            return None, int(checked)
        return out_idx[:t].copy(), int(checked)

    def min_cover_numba(cols, targets, width: int, tmax: int) -> tuple[int, np.ndarray | None]:
        cols = np.ascontiguousarray(cols, dtype=np.int64)
        targets = np.ascontiguousarray(targets, dtype=np.int64)
        out_idx = np.empty(max(tmax, 1), dtype=np.int64)
        t = _min_cover_nb(cols, targets, width, tmax, _binom_table(len(cols)), out_idx)
        if t < 0:
            return -1, None
        return int(t), out_idx[:t].copy()

    def min_cover_batch_numba(cols, tuples, width: int, tmax: int) -> np.ndarray:
        cols = np.ascontiguousarray(cols, dtype=np.int64)
        tuples = np.ascontiguousarray(np.atleast_2d(tuples), dtype=np.int64)
        return _min_cover_batch_nb(cols, tuples, width, tmax, _binom_table(len(cols)))

    first_cover = first_cover_numba
    min_cover = min_cover_numba
    min_cover_batch = min_cover_batch_numba
else:
    first_cover = first_cover_numpy
    min_cover = min_cover_numpy
    min_cover_batch = min_cover_batch_numpy
