"""Arithmetic in GF(2^m) using the polynomial basis.

Field elements are plain ints: bit ``i`` is the coefficient of ``x^i`` in the
residue modulo the field's modulus.  Zero and one are ``0`` and ``1``; addition
is ``^``.  A :class:`FieldSpec` carries the modulus and a primitive element and
lazily builds exp/log tables used by the vectorized helpers (m <= 20).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache

import numpy as np

from . import bitlin

Felt = int

MIN_M, MAX_M = 2, 32
TABLE_MAX_M = 20


# -- polynomials over GF(2) packed as ints ---------------------------------

def _pdeg(p: int) -> int:
    return p.bit_length() - 1


def _pmod(a: int, f: int) -> int:
    df = _pdeg(f)
    while a and _pdeg(a) >= df:
        a ^= f << (_pdeg(a) - df)
    return a


def _pmulmod(a: int, b: int, f: int) -> int:
    df = _pdeg(f)
    top = 1 << df
    r = 0
    while b:
        if b & 1:
            r ^= a
        b >>= 1
        a <<= 1
        if a & top:
            a ^= f
    return r


def _pdivmod(a: int, b: int) -> tuple[int, int]:
    q = 0
    db = _pdeg(b)
    while a and _pdeg(a) >= db:
        s = _pdeg(a) - db
        q |= 1 << s
        a ^= b << s
    return q, a


def _pgcd(a: int, b: int) -> int:
    while b:
        a, b = b, _pmod(a, b)
    return a


def _x_pow2k_mod(k: int, f: int) -> int:
    """x^(2^k) mod f by repeated squaring."""
    r = _pmod(2, f)
    for _ in range(k):
        r = _pmulmod(r, r, f)
    return r


def _prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out.append(n)
    return out


def find_factor(f: int) -> int | None:
    """A nontrivial factor of the GF(2) polynomial ``f``, or None if irreducible."""
    m = _pdeg(f)
    if m <= 0:
        return None
    deriv = sum(((f >> i) & 1) << (i - 1) for i in range(1, m + 1, 2))
    g = _pgcd(f, deriv)
    if 0 < _pdeg(g) < m:
        return g
    if deriv == 0:
        # f is a square; its square root divides it
        return sum(((f >> (2 * i)) & 1) << i for i in range(m // 2 + 1))
    for d in range(1, m // 2 + 1):
        g = _pgcd(f, _x_pow2k_mod(d, f) ^ 2)
        if g != 1:
            if _pdeg(g) < m:
                return g
            # f is a product of distinct degree-d irreducibles: trial split
            for cand in range(1 << d, 1 << (d + 1)):
                if _pmod(f, cand) == 0:
                    return cand
    return None


def is_irreducible(f: int) -> bool:
    m = _pdeg(f)
    if m < 1:
        return False
    if _x_pow2k_mod(m, f) != _pmod(2, f):
        return False
    for p in _prime_factors(m):
        if _pgcd(f, _x_pow2k_mod(m // p, f) ^ 2) != 1:
            return False
    return True


def _order_is_full(g: int, f: int) -> bool:
    m = _pdeg(f)
    n = (1 << m) - 1
    if _ppow(g, n, f) != 1:
        return False
    return all(_ppow(g, n // p, f) != 1 for p in _prime_factors(n))


def _ppow(a: int, e: int, f: int) -> int:
    r = 1
    while e:
        if e & 1:
            r = _pmulmod(r, a, f)
        a = _pmulmod(a, a, f)
        e >>= 1
    return r


@lru_cache(maxsize=None)
def default_modulus(m: int) -> int:
    """Numerically smallest primitive polynomial of degree ``m``."""
    for f in range((1 << m) | 1, 1 << (m + 1), 2):
        if is_irreducible(f) and _order_is_full(2, f):
            return f
    raise AssertionError("no primitive polynomial found")  # pragma: no cover


# -- the field -------------------------------------------------------------

@dataclass(frozen=True)
class FieldSpec:
    m: int
    modulus: int
    generator: Felt

    @property
    def q(self) -> int:
        return 1 << self.m

    @property
    def order(self) -> int:
        """Size of the multiplicative group, 2^m - 1."""
        return (1 << self.m) - 1

    @property
    def mask(self) -> int:
        return (1 << self.m) - 1

    def elements(self) -> range:
        return range(1 << self.m)

    @cached_property
    def trace_mask(self) -> int:
        """Bit ``i`` holds trace(x^i); trace(a) is the parity of ``a & trace_mask``."""
        mask = 0
        for i in range(self.m):
            if _trace_direct(self, 1 << i):
                mask |= 1 << i
        return mask

    @cached_property
    def exp_table(self) -> np.ndarray:
        """generator^j for j in [0, 2n); doubled so index sums need no reduction."""
        self._check_tables()
        n = self.order
        out = np.empty(2 * n, dtype=np.int64)
        v = 1
        for j in range(n):
            out[j] = v
            v = mul(self, v, self.generator)
        out[n:] = out[:n]
        return out

    @cached_property
    def log_table(self) -> np.ndarray:
        """Discrete log base the generator; entry 0 is -1."""
        self._check_tables()
        out = np.full(self.q, -1, dtype=np.int64)
        out[self.exp_table[: self.order]] = np.arange(self.order, dtype=np.int64)
        return out

    @cached_property
    def trace_table(self) -> np.ndarray:
        self._check_tables()
        return bitlin.popcount_arr(np.arange(self.q, dtype=np.int64) & self.trace_mask) & 1

    def _check_tables(self):
        if self.m > TABLE_MAX_M:
            raise ValueError(f"lookup tables unsupported for m={self.m} > {TABLE_MAX_M}")

    def to_json(self) -> dict:
        return {"m": self.m, "modulus": hex(self.modulus), "generator": hex(self.generator)}

    @classmethod
    def from_json(cls, d: dict) -> "FieldSpec":
        f = make_field(int(d["m"]), int(d["modulus"], 16))
        gen = int(d["generator"], 16)
        if gen != f.generator:
            if not _order_is_full(gen, f.modulus):
                raise ValueError(f"{d['generator']} is not primitive")
            f = FieldSpec(f.m, f.modulus, gen)
        return f


class ReducibleModulusError(ValueError):
    def __init__(self, modulus: int, factor: int):
        super().__init__(f"modulus {modulus:#x} is reducible: divisible by {factor:#x}")
        self.modulus = modulus
        self.factor = factor


@lru_cache(maxsize=64)
def make_field(m: int, modulus: int | None = None) -> FieldSpec:
    if not MIN_M <= m <= MAX_M:
        raise ValueError(f"m={m} outside [{MIN_M}, {MAX_M}]")
    if modulus is None:
        modulus = default_modulus(m)
    elif _pdeg(modulus) != m:
        raise ValueError(f"modulus {modulus:#x} is not monic of degree {m}")
    factor = find_factor(modulus)
    if factor is not None:
        raise ReducibleModulusError(modulus, factor)
    gen = next(g for g in range(2, 1 << m) if _order_is_full(g, modulus))
    return FieldSpec(m, modulus, gen)


def felt_hex(a: Felt) -> str:
    return hex(a)


def parse_felt(f: FieldSpec, s: str) -> Felt:
    s = s.strip().lower()
    if not s.startswith("0x"):
        raise ValueError(f"field element {s!r} must be hex with 0x prefix")
    a = int(s, 16)
    if a >> f.m:
        raise ValueError(f"{s} does not fit in GF(2^{f.m})")
    return a


# -- scalar operations -----------------------------------------------------

def add(f: FieldSpec, a: Felt, b: Felt) -> Felt:
    return a ^ b


def mul(f: FieldSpec, a: Felt, b: Felt) -> Felt:
    top = 1 << f.m
    r = 0
    while b:
        if b & 1:
            r ^= a
        b >>= 1
        a <<= 1
        if a & top:
            a ^= f.modulus
    return r


def frobenius(f: FieldSpec, a: Felt) -> Felt:
    return mul(f, a, a)


def cube(f: FieldSpec, a: Felt) -> Felt:
    return mul(f, mul(f, a, a), a)


def pow(f: FieldSpec, a: Felt, e: int) -> Felt:  # noqa: A001
    if e < 0:
        a, e = inv(f, a), -e
    r = 1
    while e:
        if e & 1:
            r = mul(f, r, a)
        a = mul(f, a, a)
        e >>= 1
    return r


def inv(f: FieldSpec, a: Felt) -> Felt:
    if a == 0:
        raise ZeroDivisionError("inverse of zero in GF(2^m)")
    return pow(f, a, f.order - 1)


def div(f: FieldSpec, a: Felt, b: Felt) -> Felt:
    return mul(f, a, inv(f, b))


def sqrt(f: FieldSpec, a: Felt) -> Felt:
    """Unique square root: a^(2^(m-1))."""
    for _ in range(f.m - 1):
        a = mul(f, a, a)
    return a


def _trace_direct(f: FieldSpec, a: Felt) -> int:
    s, t = 0, a
    for _ in range(f.m):
        s ^= t
        t = mul(f, t, t)
    assert s in (0, 1)
    return s


def trace(f: FieldSpec, a: Felt) -> int:
    return (a & f.trace_mask).bit_count() & 1


def is_cube(f: FieldSpec, a: Felt) -> bool:
    if a == 0:
        raise ValueError("cube status of 0 is undefined")
    if f.m % 2:
        return True
    return pow(f, a, f.order // 3) == 1


@lru_cache(maxsize=64)
def _artin_schreier_rows(f: FieldSpec) -> tuple[int, ...]:
    # image of basis vector x^j under w -> w^2 + w
    return tuple(frobenius(f, 1 << j) ^ (1 << j) for j in range(f.m))


def solve_artin_schreier(f: FieldSpec, c: Felt) -> tuple[Felt, Felt] | None:
    """Both roots of w^2 + w = c, or None when trace(c) = 1."""
    w = bitlin.solve_combination(_artin_schreier_rows(f), c)
    if w is None:
        return None
    return (w, w ^ 1) if w < w ^ 1 else (w ^ 1, w)


def solve_quadratic(f: FieldSpec, a: Felt, b: Felt) -> list[Felt]:
    """Sorted roots of x^2 + a x + b in GF(2^m)."""
    if a == 0:
        return [sqrt(f, b)]
    a_inv = inv(f, a)
    ws = solve_artin_schreier(f, mul(f, b, mul(f, a_inv, a_inv)))
    if ws is None:
        return []
    return sorted(mul(f, a, w) for w in ws)


# -- vectorized helpers (table based) --------------------------------------

def mul_arr(f: FieldSpec, a, b) -> np.ndarray:
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    log, exp = f.log_table, f.exp_table
    la, lb = log[a], log[b]
    out = exp[np.where((la < 0) | (lb < 0), 0, la + lb)]
    return np.where((a == 0) | (b == 0), 0, out)


def pow_arr(f: FieldSpec, a, e: int) -> np.ndarray:
    a = np.asarray(a, dtype=np.int64)
    la = f.log_table[a]
    out = f.exp_table[np.where(la < 0, 0, (la * e) % f.order)]
    if e == 0:
        return np.ones_like(a)
    return np.where(a == 0, 0, out)


def inv_arr(f: FieldSpec, a) -> np.ndarray:
    a = np.asarray(a, dtype=np.int64)
    if np.any(a == 0):
        raise ZeroDivisionError("inverse of zero in GF(2^m)")
    return f.exp_table[(f.order - f.log_table[a]) % f.order]


def trace_arr(f: FieldSpec, a) -> np.ndarray:
    return f.trace_table[np.asarray(a, dtype=np.int64)]
