"""Finite fields used by the toolkit.

Two kinds of field appear:

* the *structure field* ``F_q`` (``q = p**f``) over which matrix groups are
  defined.  Elements are integers ``0..q-1`` read as base-``p`` digit strings
  of polynomial coefficients (lowest degree first) modulo a fixed modulus.
  Arithmetic goes through full ``q x q`` tables, so ``q`` is capped at
  ``MAX_STRUCTURE_ORDER``.

* the *coefficient field* ``k = F_{ell**m}`` of the modules.  Elements use the
  Zech-logarithm encoding: ``0`` is the zero element and ``c >= 1`` stands for
  ``gamma**(c-1)`` where ``gamma`` is the class of ``x`` modulo a primitive
  polynomial.  Multiplication is addition of logarithms; addition goes through
  the Zech table ``zech[d] = log(1 + gamma**d)`` (``-1`` when that sum is 0).

For both fields the modulus is the lexicographically least monic primitive
polynomial of the required degree, comparing the lower coefficients as a
base-``p`` integer (constant term least significant).  For ``F_4`` this is
``x**2 + x + 1``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
from sympy import factorint, isprime

MAX_STRUCTURE_ORDER = 1024
MAX_COEFF_ORDER = 1 << 23


class FieldError(ValueError):
    """Invalid field parameters."""


# -- polynomial helpers over F_p (coefficient lists, lowest degree first) ----


def _poly_mulmod(a: list[int], b: list[int], mod: list[int], p: int) -> list[int]:
    deg = len(mod) - 1
    prod = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod[i + j] = (prod[i + j] + ai * bj) % p
    # mod is monic
    for top in range(len(prod) - 1, deg - 1, -1):
        c = prod[top]
        if c:
            for k in range(deg + 1):
                prod[top - deg + k] = (prod[top - deg + k] - c * mod[k]) % p
    out = prod[:deg] + [0] * max(0, deg - len(prod))
    return out


def _poly_powmod_x(e: int, mod: list[int], p: int) -> list[int]:
    deg = len(mod) - 1
    result = [1] + [0] * (deg - 1)
    base = ([0, 1] + [0] * deg)[:deg] if deg > 1 else [(-mod[0]) % p]
    while e:
        if e & 1:
            result = _poly_mulmod(result, base, mod, p)
        base = _poly_mulmod(base, base, mod, p)
        e >>= 1
    return result


@lru_cache(maxsize=None)
def primitive_modulus(p: int, degree: int) -> tuple[int, ...]:
    """Lexicographically least monic primitive polynomial of ``degree`` over F_p.

    Returned as a coefficient tuple, lowest degree first, ending with the
    leading 1.
    """
    order = p**degree - 1
    one = [1] + [0] * (degree - 1)
    prime_factors = list(factorint(order)) if order > 1 else []
    for code in range(p**degree):
        low = [(code // p**i) % p for i in range(degree)]
        if low[0] == 0:
            continue
        mod = low + [1]
        if _poly_powmod_x(order, mod, p) != one:
            continue
        if all(_poly_powmod_x(order // r, mod, p) != one for r in prime_factors):
            return tuple(mod)
    raise FieldError(f"no primitive polynomial of degree {degree} over F_{p}")


def _exp_table(p: int, mod: tuple[int, ...]) -> np.ndarray:
    """Polynomial-basis codes of gamma**i, i = 0..p**m - 2, by block doubling."""
    m = len(mod) - 1
    order = p**m - 1
    weights = p ** np.arange(m, dtype=np.int64)
    modl = list(mod)

    def mult_matrix(h: list[int]) -> np.ndarray:
        cols = []
        xj = [1] + [0] * (m - 1)
        for _ in range(m):
            cols.append(_poly_mulmod(h, xj, modl, p))
            xj = _poly_mulmod(xj, ([0, 1] + [0] * m)[:m] if m > 1 else [(-modl[0]) % p], modl, p)
        return np.array(cols, dtype=np.int64).T

    digits = np.zeros((1, m), dtype=np.int64)
    digits[0, 0] = 1
    while digits.shape[0] < order:
        s = digits.shape[0]
        h = _poly_powmod_x(s, modl, p)
        nxt = (digits @ mult_matrix(h).T) % p
        digits = np.concatenate([digits, nxt])[:order]
    return digits @ weights


# -- structure field ---------------------------------------------------------


@dataclass(frozen=True, eq=False)
class FieldDesc:
    """The field F_q with table arithmetic on integer codes ``0..q-1``.

    All arithmetic methods accept Python ints or integer numpy arrays.
    """

    p: int
    f: int
    modulus: tuple[int, ...]
    add_table: np.ndarray = field(repr=False)
    mul_table: np.ndarray = field(repr=False)
    neg_table: np.ndarray = field(repr=False)
    inv_table: np.ndarray = field(repr=False)
    trace_table: np.ndarray = field(repr=False)
    primitive: int = 0

    @property
    def q(self) -> int:
        return self.p**self.f

    def add(self, a, b):
        return self.add_table[a, b]

    def sub(self, a, b):
        return self.add_table[a, self.neg_table[b]]

    def mul(self, a, b):
        return self.mul_table[a, b]

    def neg(self, a):
        return self.neg_table[a]

    def inv(self, a):
        if np.any(np.asarray(a) == 0):
            raise ZeroDivisionError("inverse of zero in F_q")
        return self.inv_table[a]

    def pow(self, a: int, e: int) -> int:
        r = 1
        for _ in range(e):
            r = int(self.mul_table[r, a])
        return r

    def trace(self, a):
        return self.trace_table[a]

    def elements(self) -> range:
        return range(self.q)

    def units(self) -> range:
        return range(1, self.q)

    def __eq__(self, other):
        return isinstance(other, FieldDesc) and (self.p, self.f) == (other.p, other.f)

    def __hash__(self):
        return hash(("F", self.p, self.f))


@lru_cache(maxsize=None)
def make_structure_field(p: int, f: int = 1) -> FieldDesc:
    """Build F_{p^f}. Raises FieldError for non-prime p or q above the cap."""
    if not isinstance(p, int) or not isprime(p):
        raise FieldError(f"characteristic must be prime, got {p!r}")
    if f < 1:
        raise FieldError(f"degree must be positive, got {f}")
    q = p**f
    if q > MAX_STRUCTURE_ORDER:
        raise FieldError(f"q = {q} exceeds the supported limit {MAX_STRUCTURE_ORDER}")
    mod = primitive_modulus(p, f)
    exp = _exp_table(p, mod)
    log = np.zeros(q, dtype=np.int64)
    log[exp] = np.arange(q - 1)

    codes = np.arange(q, dtype=np.int64)
    digits = (codes[:, None] // p ** np.arange(f)) % p
    weights = p ** np.arange(f, dtype=np.int64)
    add = ((digits[:, None, :] + digits[None, :, :]) % p) @ weights
    neg = ((-digits) % p) @ weights

    la = log[:, None] + log[None, :]
    mul = exp[la % (q - 1)]
    mul[0, :] = 0
    mul[:, 0] = 0
    inv = np.zeros(q, dtype=np.int64)
    inv[1:] = exp[(-log[1:]) % (q - 1)]

    # x + x^p + ... + x^(p^(f-1)) lands in the constants 0..p-1
    trace = np.zeros(q, dtype=np.int64)
    for x in range(q):
        acc, y = 0, x
        for _ in range(f):
            acc = add[acc, y]
            y = _frob(y, p, mul)
        trace[x] = acc
    if np.any(trace >= p):
        raise AssertionError("trace escaped the prime field")
    for t in (add, mul, neg, inv, trace):
        t.setflags(write=False)
    return FieldDesc(p, f, mod, add, mul, neg, inv, trace, primitive=int(exp[1]) if q > 2 else 1)


def _frob(y: int, p: int, mul: np.ndarray) -> int:
    r = 1
    for _ in range(p):
        r = int(mul[r, y])
    return r


def trace_to_prime_field(fd: FieldDesc, x):
    """Absolute trace of ``x`` as an integer in ``0..p-1``."""
    return fd.trace(x)


# -- coefficient field -------------------------------------------------------


@dataclass(frozen=True, eq=False)
class CoeffField:
    """F_{ell^m} in Zech-log encoding, carrying a primitive p-th root of unity.

    ``gamma_exponent`` selects the primitive element ``gamma0**gamma_exponent``
    used to define ``zeta``; the encoding itself always uses ``gamma0``.
    """

    ell: int
    m: int
    p: int
    modulus: tuple[int, ...]
    zech: np.ndarray = field(repr=False)
    exp: np.ndarray = field(repr=False)
    gamma_exponent: int = 1

    @property
    def order(self) -> int:
        return self.ell**self.m

    @property
    def unit_order(self) -> int:
        return self.ell**self.m - 1

    @property
    def one(self) -> int:
        return 1

    @property
    def zero(self) -> int:
        return 0

    @property
    def minus_one(self) -> int:
        return 1 if self.ell == 2 else self.unit_order // 2 + 1

    @property
    def zeta(self) -> int:
        """Code of gamma**((Q-1)/p) for the selected primitive element."""
        return (self.gamma_exponent * (self.unit_order // self.p)) % self.unit_order + 1

    # scalar/array arithmetic on codes

    def mul(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        r = (a + b - 2) % self.unit_order + 1
        return np.where((a == 0) | (b == 0), 0, r)

    def add(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        n = self.unit_order
        z = self.zech[(b - a) % n]
        s = np.where(z < 0, 0, (a - 1 + z) % n + 1)
        return np.where(a == 0, b, np.where(b == 0, a, s))

    def neg(self, a):
        return self.mul(a, self.minus_one)

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def inv(self, a):
        a = np.asarray(a, dtype=np.int64)
        if np.any(a == 0):
            raise ZeroDivisionError("inverse of zero in k")
        return (-(a - 1)) % self.unit_order + 1

    def power(self, a: int, e: int) -> int:
        if a == 0:
            return 1 if e == 0 else 0
        return (int(a) - 1) * e % self.unit_order + 1

    def sum(self, a, axis: int = 0):
        """Field sum along ``axis`` by pairwise folding."""
        a = np.moveaxis(np.asarray(a, dtype=np.int64), axis, 0)
        if a.shape[0] == 0:
            return np.zeros(a.shape[1:], dtype=np.int64)
        while a.shape[0] > 1:
            half = a.shape[0] // 2
            top = self.add(a[:half], a[half : 2 * half])
            a = np.concatenate([top, a[2 * half :]]) if a.shape[0] % 2 else top
        return a[0]

    def from_int(self, n):
        """Image of an integer (or integer array) under Z -> k."""
        return self._prime_codes[np.asarray(n, dtype=np.int64) % self.ell]

    def to_poly(self, a) -> np.ndarray:
        """Polynomial-basis integer code of ``a`` (digits base ell)."""
        a = np.asarray(a, dtype=np.int64)
        return np.where(a == 0, 0, self.exp[np.maximum(a - 1, 0)])

    @property
    def _prime_codes(self) -> np.ndarray:
        cached = self.__dict__.get("_pc")
        if cached is None:
            codes = [0]
            for _ in range(self.ell - 1):
                codes.append(int(self.add(codes[-1], 1)))
            cached = np.array(codes, dtype=np.int64)
            object.__setattr__(self, "_pc", cached)
        return cached

    def elements(self) -> np.ndarray:
        return np.arange(self.order, dtype=np.int64)


def minimal_extension_degree(ell: int, p: int) -> int:
    m, r = 1, ell % p
    while r != 1:
        r = r * ell % p
        m += 1
    return m


@lru_cache(maxsize=32)
def make_coeff_field(
    p: int, ell: int, m_override: int | None = None, gamma_exponent: int = 1
) -> CoeffField:
    """Coefficient field F_{ell^m} containing a primitive p-th root of unity.

    ``m`` defaults to the multiplicative order of ``ell`` modulo ``p``.
    """
    if not isprime(p):
        raise FieldError(f"p must be prime, got {p}")
    if not isprime(ell):
        raise FieldError(f"ell must be prime, got {ell}")
    if ell == p:
        raise FieldError(f"ell must differ from the characteristic p = {p}")
    if m_override is None:
        m = minimal_extension_degree(ell, p)
    else:
        m = int(m_override)
        if m < 1 or pow(ell, m, p) != 1:
            raise FieldError(f"{ell}^{m} is not 1 mod {p}; no primitive {p}-th root of unity")
    Q = ell**m
    if Q > MAX_COEFF_ORDER:
        raise FieldError(f"|k| = {ell}^{m} exceeds the supported limit {MAX_COEFF_ORDER}")
    n = Q - 1
    if np.gcd(gamma_exponent, n) != 1:
        raise FieldError(f"gamma exponent {gamma_exponent} is not prime to {n}")

    mod = primitive_modulus(ell, m)
    exp = _exp_table(ell, mod)
    log = np.empty(Q, dtype=np.int64)
    log[exp] = np.arange(n, dtype=np.int64)
    low = exp % ell
    one_plus = exp - low + (low + 1) % ell
    zech = np.where(one_plus == 0, -1, log[one_plus])
    del log
    zech.setflags(write=False)
    exp.setflags(write=False)
    cf = CoeffField(ell, m, p, mod, zech, exp, gamma_exponent % n if n > 1 else 1)

    z = cf.zeta
    if cf.power(z, p) != 1 or z == 1:
        raise AssertionError("zeta does not have order p")
    return cf


def additive_character(cf: CoeffField, fd: FieldDesc):
    """psi(x) = zeta**Tr(x) as a lookup array indexed by F_q codes."""
    if cf.p != fd.p:
        raise FieldError("coefficient field built for a different characteristic")
    tr = fd.trace_table
    n = cf.unit_order
    return ((cf.zeta - 1) * tr) % n + 1
