"""Exact character sums over GF(2^m) and instance checks of Weil-type bounds.

The cubic character is chi(u) = zeta^(log u mod 3) with zeta a primitive cube
root of unity and log taken against the field generator; chi(0) = 0.  Its
sums are kept as Eisenstein integers a + b zeta.  The additive character is
psi(u) = (-1)^trace(u).  All bound comparisons are made on squared
magnitudes in integer arithmetic.

Polynomials over GF(2^m) are lists of field elements, lowest degree first.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from math import isqrt
from typing import Sequence

import numpy as np

from . import bitlin, gf2m
from .gf2m import FieldSpec, Felt

Poly = list  # coefficient list over GF(2^m), index = degree


@dataclass(frozen=True)
class EisensteinInt:
    a: int
    b: int

    @property
    def norm(self) -> int:
        """|a + b zeta|^2 = a^2 - a b + b^2."""
        return self.a * self.a - self.a * self.b + self.b * self.b

    def __add__(self, other: "EisensteinInt") -> "EisensteinInt":
        return EisensteinInt(self.a + other.a, self.b + other.b)

    def __str__(self):
        return f"{self.a}{self.b:+d}*zeta"


@dataclass
class CharSumReport:
    m: int
    sum: EisensteinInt | int
    squared_magnitude: int
    bound_squared: int
    passed: bool
    family: str

    def to_json(self) -> dict:
        s = self.sum
        return {"m": self.m, "family": self.family,
                "sum": [s.a, s.b] if isinstance(s, EisensteinInt) else s,
                "squared_magnitude": self.squared_magnitude,
                "bound_squared": self.bound_squared, "pass": self.passed}

    CSV_HEADER = "m,family,abs_sum_sq,bound_sq,pass"

    def csv_row(self) -> str:
        return f'{self.m},"{self.family}",{self.squared_magnitude},{self.bound_squared},{int(self.passed)}'


# -- polynomial arithmetic over GF(2^m) -------------------------------------

def _trim(p: Sequence[Felt]) -> list[Felt]:
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def _pdeg(p) -> int:
    return len(p) - 1


def _pmul(f: FieldSpec, p, q) -> list[Felt]:
    if not p or not q:
        return []
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] ^= gf2m.mul(f, a, b)
    return _trim(out)


def _pdivmod(f: FieldSpec, p, q) -> tuple[list[Felt], list[Felt]]:
    p, q = _trim(p), _trim(q)
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    lead_inv = gf2m.inv(f, q[-1])
    quot = [0] * max(0, len(p) - len(q) + 1)
    while len(p) >= len(q):
        coef = gf2m.mul(f, p[-1], lead_inv)
        shift = len(p) - len(q)
        quot[shift] = coef
        for j, b in enumerate(q):
            p[shift + j] ^= gf2m.mul(f, coef, b)
        p = _trim(p)
    return _trim(quot), p


def _monic(f: FieldSpec, p) -> list[Felt]:
    p = _trim(p)
    inv = gf2m.inv(f, p[-1])
    return [gf2m.mul(f, c, inv) for c in p]


def _pgcd(f: FieldSpec, p, q) -> list[Felt]:
    p, q = _trim(p), _trim(q)
    while q:
        p, q = q, _pdivmod(f, p, q)[1]
    return _monic(f, p) if p else []


def _deriv(p) -> list[Felt]:
    return _trim([p[i] if i % 2 else 0 for i in range(1, len(p))])


def _sqrt_poly(f: FieldSpec, p) -> list[Felt]:
    """g with g^2 = p, for p whose odd coefficients vanish."""
    return _trim([gf2m.sqrt(f, p[i]) for i in range(0, len(p), 2)])


def squarefree_factorization(f: FieldSpec, poly) -> dict[int, list[Felt]]:
    """Monic squarefree, pairwise coprime R_i with poly = lc * prod R_i^i."""
    p = _monic(f, poly)
    out: dict[int, list[Felt]] = {}
    if _pdeg(p) < 1:
        return out
    c = _pgcd(f, p, _deriv(p))
    w = _pdivmod(f, p, c)[0]
    i = 1
    while _pdeg(w) > 0:
        y = _pgcd(f, w, c)
        fac = _pdivmod(f, w, y)[0]
        if _pdeg(fac) > 0:
            out[i] = fac
        w = y
        c = _pdivmod(f, c, y)[0]
        i += 1
    if _pdeg(c) > 0:
        for j, g in squarefree_factorization(f, _sqrt_poly(f, c)).items():
            out[2 * j] = _pmul(f, out.get(2 * j, [1]), g)
    return out


def distinct_root_count(f: FieldSpec, poly) -> int:
    """Number of distinct roots in the algebraic closure."""
    return sum(_pdeg(g) for g in squarefree_factorization(f, poly).values())


def is_cube_poly(f: FieldSpec, poly) -> bool:
    """True when poly is a constant times a cube; constants are cubes in the closure."""
    return all(i % 3 == 0 for i in squarefree_factorization(f, poly))


def eval_poly_arr(f: FieldSpec, poly, xs: np.ndarray) -> np.ndarray:
    acc = np.zeros(len(xs), dtype=np.int64)
    for c in reversed(_trim(poly)):
        acc = gf2m.mul_arr(f, acc, xs) ^ c
    return acc


def poly_from_roots(f: FieldSpec, roots_with_mult: Sequence[tuple[Felt, int]]) -> list[Felt]:
    p = [1]
    for r, e in roots_with_mult:
        for _ in range(e):
            p = _pmul(f, p, [r, 1])
    return p


def f2_poly(bits: int) -> list[Felt]:
    """Polynomial with 0/1 coefficients from a bit mask (bit i = coefficient of x^i)."""
    return [(bits >> i) & 1 for i in range(bits.bit_length())]


# -- multiplicative sums ----------------------------------------------------

def _require_cubic_character(f: FieldSpec):
    if f.m % 2:
        raise ValueError(f"no character of order 3 on GF(2^{f.m}) (m odd)")


def chi(f: FieldSpec, u: Felt) -> int | None:
    """Exponent e with chi(u) = zeta^e, or None for u = 0."""
    _require_cubic_character(f)
    if u == 0:
        return None
    return int(f.log_table[u]) % 3


def mult_char_sum(f: FieldSpec, poly) -> EisensteinInt:
    _require_cubic_character(f)
    if len(_trim(poly)) > 9:
        raise ValueError("degree above 8 not supported")
    vals = eval_poly_arr(f, poly, np.arange(f.q, dtype=np.int64))
    logs = f.log_table[vals[vals != 0]] % 3
    c0, c1, c2 = (int(np.count_nonzero(logs == e)) for e in range(3))
    # zeta^2 = -1 - zeta
    return EisensteinInt(c0 - c2, c1 - c2)


def weil_check(f: FieldSpec, poly, family: str = "") -> CharSumReport:
    _require_cubic_character(f)
    if len(_trim(poly)) > 9:
        raise ValueError("degree above 8 not supported")
    if not _trim(poly) or is_cube_poly(f, poly):
        raise ValueError("polynomial is a cube; the bound does not apply")
    s = distinct_root_count(f, poly)
    total = mult_char_sum(f, poly)
    bound_sq = (s - 1) ** 2 * f.q
    return CharSumReport(f.m, total, total.norm, bound_sq, total.norm <= bound_sq,
                         family or f"poly {[hex(c) for c in poly]} s={s}")


def _f2_product(*factors: int) -> int:
    out = 1
    for g in factors:
        acc = 0
        for i in range(g.bit_length()):
            if g >> i & 1:
                acc ^= out << i
        out = acc
    return out


# built-in corpus of non-cube polynomials with coefficients in GF(2), as bit masks
WEIL_CORPUS = {
    "x(1+x)(1+x+x^2)": _f2_product(0b10, 0b11, 0b111),
    "x": 0b10,
    "x^2": 0b100,
    "x+1": 0b11,
    "x(x+1)": _f2_product(0b10, 0b11),
    "x^2(x+1)": _f2_product(0b10, 0b10, 0b11),
    "x^3+x+1": 0b1011,
    "x^4+x+1": 0b10011,
    "x^5+x^2+1": 0b100101,
    "x^2(x+1)^4": _f2_product(0b10, 0b10, 0b11, 0b11, 0b11, 0b11),
    "x(x+1)^2(x^2+x+1)^2": _f2_product(0b10, 0b11, 0b11, 0b111, 0b111),
    "x^8+x^4+x^3+x+1": 0b100011011,
}


# -- additive sums of the rational functions f_I ----------------------------

def partial_fractions(f: FieldSpec, terms) -> dict[Felt, tuple[Felt, Felt, Felt]]:
    """Coefficients of 1/u, 1/u^2, 1/u^3 (u = X + a) per distinct pole a.

    Each term (a, b) contributes a/u + a^2/u^2 + (a^3 + b)/u^3.
    Poles whose three coefficients all vanish are dropped.
    """
    acc: dict[Felt, list[Felt]] = {}
    for a, b in terms:
        c = acc.setdefault(a, [0, 0, 0])
        a2 = gf2m.mul(f, a, a)
        c[0] ^= a
        c[1] ^= a2
        c[2] ^= gf2m.mul(f, a2, a) ^ b
    return {a: tuple(c) for a, c in acc.items() if any(c)}


def is_degenerate(f: FieldSpec, terms) -> bool:
    """f_I is the zero function."""
    return not partial_fractions(f, terms)


def eval_f_I(f: FieldSpec, terms, xs: np.ndarray) -> np.ndarray:
    xs = np.asarray(xs, dtype=np.int64)
    out = np.zeros(len(xs), dtype=np.int64)
    x2 = gf2m.mul_arr(f, xs, xs)
    for a, b in terms:
        a2 = gf2m.mul(f, a, a)
        num = gf2m.mul_arr(f, x2, a) ^ gf2m.mul_arr(f, xs, a2) ^ gf2m.mul(f, a2, a) ^ b
        den = gf2m.pow_arr(f, xs ^ a, 3)
        out ^= gf2m.mul_arr(f, num, gf2m.inv_arr(f, den))
    return out


def psi_sum(f: FieldSpec, values: np.ndarray) -> int:
    return int(len(values) - 2 * gf2m.trace_arr(f, values).sum())


def additive_rational_sum(f: FieldSpec, terms) -> int:
    """Sum of psi(f_I(x)) over x outside {a_i}; equals the domain size when f_I = 0."""
    if len(terms) > 6:
        raise ValueError("at most 6 terms")
    poles = {a for a, _ in terms}
    xs = np.array([x for x in f.elements() if x not in poles], dtype=np.int64)
    if is_degenerate(f, terms):
        return len(xs)
    return psi_sum(f, eval_f_I(f, terms, xs))


def cochrane_bound_squared(L: int, M: int, q: int) -> int:
    """floor((1 + (M + L - 2) sqrt(q))^2), exact."""
    c = M + L - 2
    if c < 0:
        raise ValueError("M + L must be at least 2")
    return 1 + c * c * q + isqrt(4 * c * c * q)


def cochrane_check(f: FieldSpec, terms, family: str = "") -> CharSumReport:
    """Check the rational-function bound on f_I, summing over x outside the true poles.

    L sums (multiplicity + 1) over the poles of f_I after cancellation; with
    distinct a_i and b_i != a_i^3 every pole has multiplicity 3, so L = 4|I|.
    """
    pf = partial_fractions(f, terms)
    if not pf:
        raise ValueError("f_I is identically zero (degenerate family)")
    L = sum(max(j + 1 for j in range(3) if c[j]) + 1 for c in pf.values())
    xs = np.array([x for x in f.elements() if x not in pf], dtype=np.int64)
    total = psi_sum(f, eval_f_I(f, terms, xs))
    bound_sq = cochrane_bound_squared(L, 0, f.q)
    return CharSumReport(f.m, total, total * total, bound_sq, total * total <= bound_sq,
                         family or f"f_I |I|={len(terms)} L={L}")


def random_terms(f: FieldSpec, size: int, rng: random.Random) -> list[tuple[Felt, Felt]]:
    return [(rng.randrange(f.q), rng.randrange(f.q)) for _ in range(size)]


# -- algebraic identities used in the lower-bound proofs ---------------------

def _triples(f: FieldSpec, mode: str, trials: int, seed: int, arity: int):
    if mode == "exhaustive":
        grid = np.indices((f.q,) * arity, dtype=np.int64).reshape(arity, -1)
        return [grid[i] for i in range(arity)]
    if mode != "random":
        raise ValueError(f"unknown mode {mode!r}")
    rng = np.random.default_rng(seed)
    return [rng.integers(0, f.q, size=trials, dtype=np.int64) for _ in range(arity)]


def _cube_arr(f, a):
    return gf2m.mul_arr(f, gf2m.mul_arr(f, a, a), a)


def verify_y1y2y3(f: FieldSpec, mode: str = "exhaustive", trials: int = 10**4, seed: int = 0) -> bool:
    """y1 + y2 + y3 = 0 forces y1^3 + y2^3 + y3^3 = y1 y2 (y1 + y2)."""
    if mode == "exhaustive" and f.m > 6:
        raise ValueError("exhaustive mode needs m <= 6")
    y1, y2 = _triples(f, mode, trials, seed, 2)
    y3 = y1 ^ y2
    lhs = _cube_arr(f, y1) ^ _cube_arr(f, y2) ^ _cube_arr(f, y3)
    rhs = gf2m.mul_arr(f, gf2m.mul_arr(f, y1, y2), y1 ^ y2)
    return bool(np.array_equal(lhs, rhs))


def verify_cube_lemma(f: FieldSpec, trials: int = 10**4, mode: str = "random", seed: int = 0) -> bool:
    """A built from alpha_i = y_i y_j (y_i + y_j) is a nonzero cube or zero."""
    _require_cubic_character(f)
    if mode == "exhaustive" and f.m > 6:
        raise ValueError("exhaustive mode needs m <= 6")
    y1, y2, y3 = _triples(f, mode, trials, seed, 3)
    mul = lambda a, b: gf2m.mul_arr(f, a, b)  # noqa: E731
    a1 = mul(mul(y1, y2), y1 ^ y2)
    a2 = mul(mul(y2, y3), y2 ^ y3)
    a3 = mul(mul(y3, y1), y3 ^ y1)
    A = mul(mul(mul(a1, a2), mul(a3, a1 ^ a2)), mul(mul(a1 ^ a3, a2 ^ a3), a1 ^ a2 ^ a3))
    root = mul(mul(mul(y1, y2), mul(y3, y1 ^ y2)), mul(mul(y2 ^ y3, y3 ^ y1), y1 ^ y2 ^ y3))
    nz = A != 0
    if not np.array_equal(A[nz], _cube_arr(f, root[nz])):
        return False
    logs = f.log_table[A[nz]]
    return bool(np.all(logs % 3 == 0))


def noncube_product(f: FieldSpec, a1: Felt, a2: Felt, a3: Felt) -> Felt:
    """Product of the seven nonzero elements of span{a1, a2, a3}."""
    out = 1
    for v in (a1, a2, a3, a1 ^ a2, a1 ^ a3, a2 ^ a3, a1 ^ a2 ^ a3):
        out = gf2m.mul(f, out, v)
    return out


def is_noncube_triple(f: FieldSpec, triple) -> bool:
    if bitlin.rank(triple) != 3:
        return False
    return not gf2m.is_cube(f, noncube_product(f, *triple))


def find_noncube_triple(f: FieldSpec) -> tuple[Felt, Felt, Felt]:
    """First (1, x0, x0^2) with independent entries and a non-cube product."""
    if f.m % 2 or f.m < 4:
        raise ValueError(f"needs even m >= 4 (got m={f.m})")
    for x0 in f.elements():
        triple = (1, x0, gf2m.mul(f, x0, x0))
        if bitlin.rank(triple) == 3:
            g = gf2m.mul(f, gf2m.mul(f, x0, 1 ^ x0), 1 ^ x0 ^ gf2m.mul(f, x0, x0))
            if g and not gf2m.is_cube(f, g):
                return triple
    raise RuntimeError(f"no non-cube triple of the form (1, x0, x0^2) in GF(2^{f.m})")


def verify_beta4(f: FieldSpec, trials: int = 10**4, mode: str = "random", seed: int = 0) -> bool:
    """(y5+y6+y7)^3 + y5^3 + y6^3 + y7^3 equals the sum of the pairwise y_i y_j (y_i + y_j)."""
    if mode == "exhaustive" and f.m > 6:
        raise ValueError("exhaustive mode needs m <= 6")
    y5, y6, y7 = _triples(f, mode, trials, seed, 3)
    lhs = _cube_arr(f, y5 ^ y6 ^ y7) ^ _cube_arr(f, y5) ^ _cube_arr(f, y6) ^ _cube_arr(f, y7)
    pair = lambda u, v: gf2m.mul_arr(f, gf2m.mul_arr(f, u, v), u ^ v)  # noqa: E731
    rhs = pair(y5, y6) ^ pair(y5, y7) ^ pair(y6, y7)
    return bool(np.array_equal(lhs, rhs))


def verify_quadratic_criterion(f: FieldSpec) -> bool:
    """For every a != 0 and b: two roots iff trace(b/a^2) = 0, else none; roots verify."""
    for a in range(1, f.q):
        a_inv2 = gf2m.inv(f, gf2m.mul(f, a, a))
        for b in f.elements():
            roots = gf2m.solve_quadratic(f, a, b)
            expect = 0 if gf2m.trace(f, gf2m.mul(f, b, a_inv2)) else 2
            if len(roots) != expect or len(set(roots)) != expect:
                return False
            for x in roots:
                if gf2m.mul(f, x, x) ^ gf2m.mul(f, a, x) ^ b:
                    return False
    return True
