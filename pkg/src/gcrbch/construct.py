"""Explicit covers of k syndrome targets by at most 2k + 1 columns.

Each target (a_i, b_i) is written as (x, x^3) + (y_i, y_i^3) + (z_i, z_i^3)
with a shared x.  Eliminating z_i = a_i + x + y_i leaves the quadratic

    (a_i + x) y^2 + (a_i^2 + x^2) y + a_i x^2 + a_i^2 x + a_i^3 + b_i = 0,

solvable in y exactly when trace(c_i) = 0 for
c_i = (a_i x^2 + a_i^2 x + a_i^3 + b_i) / (a_i + x)^3.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import bitlin, gf2m
from .bch import SyndromePair
from .gf2m import FieldSpec, Felt


@dataclass
class CoverSolution:
    x: Felt
    ys: list[Felt]
    zs: list[Felt]
    columns: list[Felt]
    coefficients: list[int]  # per target, bit j selects columns[j]

    def to_json(self, verified: bool | None = None) -> dict:
        out = {"x": hex(self.x), "ys": [hex(v) for v in self.ys], "zs": [hex(v) for v in self.zs],
               "columns": [hex(v) for v in self.columns],
               "coefficients": [[j for j in range(len(self.columns)) if c >> j & 1]
                                for c in self.coefficients]}
        if verified is not None:
            out["verified"] = verified
        return out


def quadratic_constant(f: FieldSpec, a: Felt, b: Felt, x: Felt) -> Felt:
    """a x^2 + a^2 x + a^3 + b."""
    x2 = gf2m.mul(f, x, x)
    a2 = gf2m.mul(f, a, a)
    return gf2m.mul(f, a, x2) ^ gf2m.mul(f, a2, x) ^ gf2m.mul(f, a2, a) ^ b


def _c_value(f: FieldSpec, a: Felt, b: Felt, x: Felt) -> Felt:
    return gf2m.mul(f, quadratic_constant(f, a, b, x), gf2m.inv(f, gf2m.cube(f, a ^ x)))


def _assemble(targets: list[SyndromePair], x: Felt, ys: list[Felt], zs: list[Felt]) -> CoverSolution:
    columns = sorted({v for v in [x, *ys, *zs] if v})
    pos = {v: j for j, v in enumerate(columns)}
    coeffs = []
    for y, z in zip(ys, zs):
        c = 0
        for v in (x, y, z):
            if v:
                c ^= 1 << pos[v]  # coincident values cancel mod 2
        coeffs.append(c)
    used = 0
    for c in coeffs:
        used |= c
    columns_used = [v for j, v in enumerate(columns) if used >> j & 1]
    remap = {j: i for i, j in enumerate(j for j in range(len(columns)) if used >> j & 1)}
    coeffs = [sum(1 << remap[j] for j in range(len(columns)) if c >> j & 1) for c in coeffs]
    return CoverSolution(x, ys, zs, columns_used, coeffs)


def candidate_order(f: FieldSpec, order: str = "sequential", seed: int | None = None) -> list[Felt]:
    """Nonzero field elements as generator powers alpha^0, alpha^1, ...; optionally shuffled."""
    xs = []
    v = 1
    for _ in range(f.order):
        xs.append(v)
        v = gf2m.mul(f, v, f.generator)
    if order == "randomized":
        random.Random(seed).shuffle(xs)
    elif order != "sequential":
        raise ValueError(f"unknown x order {order!r}")
    return xs


def cover_2kplus1(f: FieldSpec, targets: Sequence[SyndromePair], x_order: str = "sequential",
                  seed: int | None = None) -> CoverSolution | None:
    targets = [SyndromePair(*t) for t in targets]
    if not targets:
        raise ValueError("need at least one target")
    if all(t.a == 0 and t.b == 0 for t in targets):
        return CoverSolution(0, [0] * len(targets), [0] * len(targets), [], [0] * len(targets))
    excluded = {t.a for t in targets} | {0}
    for x in candidate_order(f, x_order, seed):
        if x in excluded:
            continue
        cs = []
        for t in targets:
            c = _c_value(f, t.a, t.b, x)
            if gf2m.trace(f, c):
                break
            cs.append(c)
        else:
            ys, zs = [], []
            for t, c in zip(targets, cs):
                w = gf2m.solve_artin_schreier(f, c)[0]
                y = gf2m.mul(f, t.a ^ x, w)
                ys.append(y)
                zs.append(t.a ^ x ^ y)
            return _assemble(targets, x, ys, zs)
    return None


def verify_solution(f: FieldSpec, targets: Sequence[SyndromePair], sol: CoverSolution) -> bool:
    m = f.m
    vecs = [c | (gf2m.cube(f, c) << m) for c in sol.columns]
    if any(c == 0 for c in sol.columns) or len(set(sol.columns)) != len(sol.columns):
        return False
    span = bitlin.BitMatrix(tuple(vecs), 2 * m)
    if len(sol.coefficients) != len(targets):
        return False
    for t, coeff in zip(targets, sol.coefficients):
        t = SyndromePair(*t)
        if not bitlin.in_span(span, t.pack(m)):
            return False
        if coeff >> len(vecs):
            return False
        acc = 0
        for j, v in enumerate(vecs):
            if coeff >> j & 1:
                acc ^= v
        if acc != t.pack(m):
            return False
    return True


def count_solutions(f: FieldSpec, targets: Sequence[SyndromePair]) -> int:
    """Number of (x, y_1..y_k, z_1..z_k) with a_i = x + y_i + z_i and b_i = x^3 + y_i^3 + z_i^3."""
    targets = [SyndromePair(*t) for t in targets]
    if f.m > 14 or len(targets) > 4:
        raise ValueError("count_solutions limited to m <= 14 and k <= 4")
    xs = np.arange(f.q, dtype=np.int64)
    prod = np.ones(f.q, dtype=object)
    for t in targets:
        d = xs ^ t.a
        x2 = gf2m.mul_arr(f, xs, xs)
        a2 = gf2m.mul(f, t.a, t.a)
        const = gf2m.mul_arr(f, x2, t.a) ^ gf2m.mul_arr(f, xs, a2) ^ gf2m.mul(f, a2, t.a) ^ t.b
        nz = d != 0
        counts = np.zeros(f.q, dtype=np.int64)
        dd = d[nz]
        c = gf2m.mul_arr(f, const[nz], gf2m.inv_arr(f, gf2m.pow_arr(f, dd, 3)))
        counts[nz] = 2 * (1 - gf2m.trace_arr(f, c))
        # x = a_i: the equation collapses to the constant a_i^3 + b_i
        counts_obj = counts.astype(object)
        counts_obj[~nz] = f.q if gf2m.cube(f, t.a) == t.b else 0
        prod = prod * counts_obj
    return int(sum(prod))


def count_solutions_bruteforce(f: FieldSpec, targets: Sequence[SyndromePair]) -> int:
    """Enumerate x and every y_i directly; z_i is then forced."""
    targets = [SyndromePair(*t) for t in targets]
    total = 0
    cubes = [gf2m.cube(f, v) for v in f.elements()]
    for x in f.elements():
        prod = 1
        for t in targets:
            cnt = 0
            for y in f.elements():
                z = t.a ^ x ^ y
                if cubes[x] ^ cubes[y] ^ cubes[z] == t.b:
                    cnt += 1
            prod *= cnt
            if not prod:
                break
        total += prod
    return total


def proof_lower_bound_holds(N: int, k: int, m: int) -> bool:
    """N >= 2^m - k 2^k - 2 sqrt(2^m) ((k-1) 2^k + 1), compared exactly."""
    lhs = N - (1 << m) + k * (1 << k)  # need lhs >= -2 sqrt(2^m) c
    c = (k - 1) * (1 << k) + 1
    if lhs >= 0:
        return True
    return lhs * lhs <= 4 * c * c * (1 << m)
