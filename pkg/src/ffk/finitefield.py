"""Arithmetic in F_{p^m}, Frobenius maps and subfield embeddings.

Elements are encoded as integers ``0 <= a < p**m`` whose base-``p`` digits
are the coefficients (low degree first) of a polynomial reduced modulo the
field's defining polynomial.  :class:`FieldElem` wraps such an integer for
operator-style use; the enumeration code works on raw integers and on numpy
coefficient arrays of shape ``(n, m)``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property, lru_cache

import numpy as np

from .errors import InvalidParameter

MAX_ORDER = 2 ** 20


# -- polynomials over F_p as coefficient lists, low degree first --------------

def _trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmod(a, f, p):
    a = _trim(a)
    df = len(f) - 1
    inv_lead = pow(f[-1], p - 2, p) if p > 2 else 1
    while len(a) - 1 >= df:
        c = a[-1] * inv_lead % p
        shift = len(a) - 1 - df
        for i, fc in enumerate(f):
            a[shift + i] = (a[shift + i] - c * fc) % p
        a = _trim(a)
    return a


def _pmul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _trim(out)


def _psub(a, b, p):
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return _trim([(x - y) % p for x, y in zip(a, b)])


def _pgcd(a, b, p):
    a, b = _trim(a), _trim(b)
    while b:
        a, b = b, _pmod(a, b, p)
    return a


def _x_pow_p_mod(g, f, p):
    """``g(x)**p mod f``."""
    out = [1]
    base = list(g)
    e = p
    while e:
        if e & 1:
            out = _pmod(_pmul(out, base, p), f, p)
        base = _pmod(_pmul(base, base, p), f, p)
        e >>= 1
    return out


def is_irreducible(f, p) -> bool:
    """Ben-Or test: no factor of degree <= deg(f)/2."""
    f = _trim(f)
    deg = len(f) - 1
    if deg < 1:
        return False
    if deg == 1:
        return True
    h = [0, 1]
    for _ in range(deg // 2):
        h = _x_pow_p_mod(h, f, p)
        g = _pgcd(f, _psub(h, [0, 1], p), p)
        if len(g) > 1:
            return False
    return True


def is_prime(n: int) -> bool:
    return n >= 2 and all(n % k for k in range(2, int(n ** 0.5) + 1))


def smallest_irreducible(p: int, m: int) -> tuple[int, ...]:
    """Lexicographically smallest monic irreducible, comparing ``c0`` first."""
    for low in itertools.product(range(p), repeat=m):
        f = list(low) + [1]
        if m > 1 and low[0] == 0:
            continue
        if is_irreducible(f, p):
            return tuple(f)
    raise AssertionError("no irreducible polynomial found")


# -- linear algebra mod p ------------------------------------------------------

def nullspace_mod_p(rows, p):
    """Basis of ``{x : x @ M == 0}`` for the ``n x k`` matrix ``rows`` (row-vector convention)."""
    n = len(rows)
    k = len(rows[0]) if rows else 0
    # solve M^T y = 0
    a = [[rows[i][j] % p for i in range(n)] for j in range(k)]
    pivots = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, k) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = pow(a[r][c], p - 2, p) if p > 2 else 1
        a[r] = [x * inv % p for x in a[r]]
        for i in range(k):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [(x - f * y) % p for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for fc in free:
        vec = [0] * n
        vec[fc] = 1
        for i, pc in enumerate(pivots):
            vec[pc] = (-a[i][fc]) % p
        basis.append(vec)
    return basis


# -- the field -----------------------------------------------------------------

class FieldCtx:
    """The field ``F_p[x]/(modulus)`` of order ``p**m``."""

    def __init__(self, p: int, m: int, modulus=None):
        if not is_prime(p):
            raise InvalidParameter(f"p={p} is not prime")
        if m < 1:
            raise InvalidParameter("degree must be at least 1")
        self.p = p
        self.m = m
        self.modulus = tuple(modulus) if modulus is not None else smallest_irreducible(p, m)
        if len(self.modulus) != m + 1 or self.modulus[-1] != 1:
            raise InvalidParameter("modulus must be monic of degree m")
        if not is_irreducible(self.modulus, p):
            raise InvalidParameter(f"modulus {self.modulus} is reducible")
        self.order = p ** m
        self._digits = [p ** i for i in range(m)]
        # x^k mod f for k < 2m - 1
        red = []
        for k in range(2 * m - 1):
            mono = [0] * k + [1]
            r = _pmod(mono, self.modulus, p)
            red.append(r + [0] * (m - len(r)))
        self._reduce = red
        self._reduce_f = np.array(red, dtype=np.float64)

    def __repr__(self):
        return f"FieldCtx(p={self.p}, m={self.m}, modulus={self.modulus})"

    def __eq__(self, other):
        return isinstance(other, FieldCtx) and (self.p, self.m, self.modulus) == (
            other.p, other.m, other.modulus)

    def __hash__(self):
        return hash((self.p, self.m, self.modulus))

    # encoding
    def coeffs(self, a: int) -> list[int]:
        out = []
        for _ in range(self.m):
            a, r = divmod(a, self.p)
            out.append(r)
        return out

    def from_coeffs(self, cs) -> int:
        return sum(int(c) % self.p * d for c, d in zip(cs, self._digits))

    def __call__(self, value) -> "FieldElem":
        if isinstance(value, (list, tuple)):
            value = self.from_coeffs(value)
        return FieldElem(self, int(value) % self.order)

    def one(self) -> int:
        return 1

    # scalar arithmetic on encoded ints
    def add(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        return self.from_coeffs(x + y for x, y in zip(self.coeffs(a), self.coeffs(b)))

    def neg(self, a: int) -> int:
        if self.p == 2:
            return a
        return self.from_coeffs(-x for x in self.coeffs(a))

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        if a == 1:
            return b
        if b == 1:
            return a
        ca, cb = self.coeffs(a), self.coeffs(b)
        prod = [0] * (2 * self.m - 1)
        for i, x in enumerate(ca):
            if x:
                for j, y in enumerate(cb):
                    prod[i + j] += x * y
        out = [0] * self.m
        for k, c in enumerate(prod):
            c %= self.p
            if c:
                for i, r in enumerate(self._reduce[k]):
                    out[i] += c * r
        return self.from_coeffs(out)

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            if e < 0:
                raise ZeroDivisionError("zero has no inverse")
            return 0 if e else 1
        e %= self.order - 1
        out = 1
        while e:
            if e & 1:
                out = self.mul(out, a)
            a = self.mul(a, a)
            e >>= 1
        return out

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("zero has no inverse")
        return self.pow(a, self.order - 2)

    def frob(self, a: int, k: int = 1) -> int:
        """``a ** (p ** k)``; ``k`` is taken modulo ``m`` so negative ``k`` inverts."""
        k %= self.m
        if k == 0 or a in (0, 1):
            return a
        return self.from_coeffs(np.asarray(self.coeffs(a)) @ self.frob_matrix(k) % self.p)

    # batch arithmetic on (n, m) coefficient arrays
    def to_array(self, values) -> np.ndarray:
        v = np.asarray(values, dtype=np.int64).copy()
        out = np.empty((v.shape[0], self.m), dtype=np.int64)
        for i in range(self.m):
            out[:, i] = v % self.p
            v //= self.p
        return out

    def from_array(self, arr: np.ndarray) -> np.ndarray:
        return arr @ np.array(self._digits, dtype=np.int64)

    def mul_array(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        n, m = a.shape[0], self.m
        small = m * (self.p - 1) ** 2 < 2 ** 15
        dt = np.int16 if small else np.int64
        a, b = a.astype(dt, copy=False), b.astype(dt, copy=False)
        prod = np.zeros((n, 2 * m - 1), dtype=dt)
        for i in range(m):
            prod[:, i:i + m] += a[:, i:i + 1] * b
        prod %= self.p
        out = prod.astype(np.float32 if small else np.float64) @ self._reduce_f.astype(
            np.float32 if small else np.float64)
        return np.rint(out).astype(np.int64) % self.p

    def pow_array(self, a: np.ndarray, e: int) -> np.ndarray:
        e %= self.order - 1
        out = np.zeros_like(a)
        out[:, 0] = 1
        while e:
            if e & 1:
                out = self.mul_array(out, a)
            e >>= 1
            if e:
                a = self.mul_array(a, a)
        return out

    def frob_array(self, a: np.ndarray, k: int = 1) -> np.ndarray:
        k %= self.m
        if k == 0:
            return a
        out = a.astype(np.float64) @ self.frob_matrix(k).astype(np.float64)
        return np.rint(out).astype(np.int64) % self.p

    def frob_matrix(self, k: int) -> np.ndarray:
        return self._frob_matrices[k % self.m]

    @cached_property
    def _frob_matrices(self) -> list[np.ndarray]:
        # row i holds the coefficients of (x^i)^p
        base = []
        for i in range(self.m):
            xi = self.from_coeffs([0] * i + [1] + [0] * (self.m - i - 1))
            base.append(self.coeffs(self.pow(xi, self.p)))
        f1 = np.array(base, dtype=np.int64)
        mats = [np.eye(self.m, dtype=np.int64)]
        for _ in range(1, self.m):
            mats.append(mats[-1] @ f1 % self.p)
        return mats

    def elements(self):
        return range(self.order)

    def units(self):
        return range(1, self.order)


@dataclass(frozen=True)
class FieldElem:
    ctx: FieldCtx
    value: int

    @property
    def coeffs(self) -> tuple[int, ...]:
        return tuple(self.ctx.coeffs(self.value))

    def _other(self, other):
        if isinstance(other, FieldElem):
            if other.ctx != self.ctx:
                raise InvalidParameter("elements from different fields")
            return other.value
        return self.ctx.from_coeffs([other]) if isinstance(other, int) else NotImplemented

    def __add__(self, other):
        return FieldElem(self.ctx, self.ctx.add(self.value, self._other(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return FieldElem(self.ctx, self.ctx.sub(self.value, self._other(other)))

    def __neg__(self):
        return FieldElem(self.ctx, self.ctx.neg(self.value))

    def __mul__(self, other):
        return FieldElem(self.ctx, self.ctx.mul(self.value, self._other(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return FieldElem(self.ctx, self.ctx.mul(self.value, self.ctx.inv(self._other(other))))

    def __pow__(self, e: int):
        return FieldElem(self.ctx, self.ctx.pow(self.value, e))

    def inverse(self) -> "FieldElem":
        return FieldElem(self.ctx, self.ctx.inv(self.value))

    def is_zero(self) -> bool:
        return self.value == 0

    def __repr__(self):
        return f"{self.coeffs}"


@lru_cache(maxsize=None)
def make_field(p: int, m: int, allow_large: bool = False) -> FieldCtx:
    """Deterministic ``F_{p^m}``; fields above 2**20 elements need ``allow_large``."""
    if not is_prime(p):
        raise InvalidParameter(f"p={p} is not prime")
    if m < 1:
        raise InvalidParameter("degree must be at least 1")
    if p ** m > MAX_ORDER and not allow_large:
        raise InvalidParameter(f"field of order {p}^{m} exceeds the enumeration budget")
    return FieldCtx(p, m)


def frobenius(a: FieldElem, q: int) -> FieldElem:
    """``a ** q`` for ``q`` a power of the characteristic."""
    ctx = a.ctx
    k, r = 0, q
    while r % ctx.p == 0:
        r //= ctx.p
        k += 1
    if r != 1:
        raise InvalidParameter(f"q={q} is not a power of p={ctx.p}")
    return FieldElem(ctx, ctx.frob(a.value, k))


def unit_iter(ctx: FieldCtx):
    for a in ctx.units():
        yield FieldElem(ctx, a)


class Embedding:
    """Ring embedding ``F_{p^m} -> F_{p^m'}`` sending the generator to the smallest root."""

    def __init__(self, src: FieldCtx, dst: FieldCtx):
        if src.p != dst.p or dst.m % src.m:
            raise InvalidParameter(f"no embedding of F_{src.p}^{src.m} into F_{dst.p}^{dst.m}")
        self.src, self.dst = src, dst
        p = src.p
        # the copy of F_{p^m} inside dst: fixed points of the p^m-power map
        fm = dst.frob_matrix(src.m) - np.eye(dst.m, dtype=np.int64)
        basis = nullspace_mod_p(fm.tolist(), p)
        best = None
        for combo in itertools.product(range(p), repeat=len(basis)):
            cs = [sum(c * b[i] for c, b in zip(combo, basis)) % p for i in range(dst.m)]
            r = dst.from_coeffs(cs)
            if best is not None and r >= best:
                continue
            acc = 0
            for c in reversed(src.modulus):
                acc = dst.add(dst.mul(acc, r), dst.from_coeffs([c]))
            if acc == 0:
                best = r
        assert best is not None
        self.root = best
        powers = [1]
        for _ in range(src.m - 1):
            powers.append(dst.mul(powers[-1], best))
        self.matrix = np.array([dst.coeffs(x) for x in powers], dtype=np.int64)

    def __call__(self, a: int) -> int:
        cs = np.asarray(self.src.coeffs(a), dtype=np.int64)
        return self.dst.from_coeffs(cs @ self.matrix % self.src.p)

    def map_array(self, arr: np.ndarray) -> np.ndarray:
        return arr @ self.matrix % self.src.p


@lru_cache(maxsize=None)
def embedding(src: FieldCtx, dst: FieldCtx) -> Embedding:
    return Embedding(src, dst)


def embed(a: FieldElem, src: FieldCtx, dst: FieldCtx) -> FieldElem:
    if a.ctx != src:
        raise InvalidParameter("element does not belong to the source field")
    return FieldElem(dst, embedding(src, dst)(a.value))
