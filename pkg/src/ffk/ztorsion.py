"""Exact integer linear algebra and the invertible-module count over Z[1/p]."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import gcd

from .alexander import AlexPoly, alexander_from_matrix, dehn_matrix, evaluate
from .diagram import Diagram
from .errors import InvalidParameter
from .presentation import dehn_presentation

IntMatrix = list[list[int]]


@dataclass(frozen=True)
class SmithDecomposition:
    """``U @ A @ V == diag(divisors) (padded with zeros)``."""

    divisors: tuple[int, ...]
    U: IntMatrix
    V: IntMatrix
    shape: tuple[int, int]

    @property
    def rank(self) -> int:
        return len(self.divisors)

    def diagonal(self) -> IntMatrix:
        m, n = self.shape
        out = [[0] * n for _ in range(m)]
        for i, d in enumerate(self.divisors):
            out[i][i] = d
        return out


def identity(n: int) -> IntMatrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(a: IntMatrix, b: IntMatrix, inner: int | None = None) -> IntMatrix:
    if not a:
        return []
    cols = len(b[0]) if b else 0
    return [[sum(row[k] * b[k][j] for k in range(len(b))) for j in range(cols)] for row in a]


def smith_normal_form(a: IntMatrix, ncols: int | None = None) -> SmithDecomposition:
    """Smith form by unimodular row/column operations, pivoting on min ``|entry|``."""
    m = len(a)
    n = len(a[0]) if a else (ncols or 0)
    s = [list(map(int, row)) for row in a]
    u = identity(m)
    v = identity(n)

    def swap_rows(i, j):
        s[i], s[j] = s[j], s[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in s:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, c):  # row_dst += c * row_src
        s[dst] = [x + c * y for x, y in zip(s[dst], s[src])]
        u[dst] = [x + c * y for x, y in zip(u[dst], u[src])]

    def add_col(dst, src, c):
        for row in s:
            row[dst] += c * row[src]
        for row in v:
            row[dst] += c * row[src]

    divisors = []
    for t in range(min(m, n)):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if s[i][j] and (best is None or abs(s[i][j]) < abs(s[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        while True:
            for i in range(t + 1, m):
                if s[i][t]:
                    add_row(i, t, -(s[i][t] // s[t][t]))
            for j in range(t + 1, n):
                if s[t][j]:
                    add_col(j, t, -(s[t][j] // s[t][t]))
            rest = [(abs(s[i][t]), i, "r") for i in range(t + 1, m) if s[i][t]]
            rest += [(abs(s[t][j]), j, "c") for j in range(t + 1, n) if s[t][j]]
            if rest:
                _, k, kind = min(rest)
                (swap_rows if kind == "r" else swap_cols)(t, k)
                continue
            piv = s[t][t]
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                        if s[i][j] % piv), None)
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if s[t][t] < 0:
            s[t] = [-x for x in s[t]]
            u[t] = [-x for x in u[t]]
        divisors.append(s[t][t])
    return SmithDecomposition(tuple(divisors), u, v, (m, n))


def det_int(a: IntMatrix) -> int:
    """Bareiss determinant of a square integer matrix."""
    n = len(a)
    if n == 0:
        return 1
    m = [list(row) for row in a]
    sign, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k]), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def rank_int(a: IntMatrix) -> int:
    rows = [[Fraction(x) for x in row] for row in a]
    r = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c] / rows[r][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        r += 1
    return r


def minor_gcd(a: IntMatrix, k: int) -> int:
    """Gcd of all ``k x k`` minors (the k-th determinantal divisor)."""
    m = len(a)
    n = len(a[0]) if a else 0
    g = 0
    for rs in combinations(range(m), k):
        for cs in combinations(range(n), k):
            g = gcd(g, det_int([[a[r][c] for c in cs] for r in rs]))
            if g == 1:
                return 1
    return g


def prime_to_p(n: int, p: int) -> int:
    n = abs(n)
    if n == 0:
        return 0
    while n % p == 0:
        n //= p
    return n


def torsion_order_cokernel_p_inverted(a: IntMatrix, p: int, ncols: int | None = None) -> int:
    """Order of the torsion of ``coker(a)`` after inverting ``p``."""
    snf = smith_normal_form(a, ncols)
    out = 1
    for d in snf.divisors:
        out *= prime_to_p(d, p)
    return out


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def integral_dehn_matrix(d: Diagram, q: int) -> IntMatrix:
    """``A(q)`` with right-handed rows scaled by ``q`` so every entry is an integer."""
    rows = dehn_matrix(dehn_presentation(d), classical=True)
    return [[int(e(q)) for e in row] for row in rows]


def boundary_composes_to_zero(d: Diagram, q: int) -> bool:
    """``A(q)`` followed by ``e_j -> q^I(j) - 1`` is the zero map."""
    pres = dehn_presentation(d)
    rows = dehn_matrix(pres)
    col = [Fraction(q) ** pres.indices[j] - 1 for j in pres.generators]
    return all(sum(e(q) * c for e, c in zip(row, col)) == 0 for row in rows)


@dataclass(frozen=True)
class CountResult:
    p: int
    nu: int
    q: int
    delta_q: int
    count: int
    p_divides_c0: bool
    elementary_divisors: tuple[int, ...]
    poly: AlexPoly = field(repr=False)

    def as_dict(self) -> dict:
        return {
            "p": self.p,
            "nu": self.nu,
            "q": self.q,
            "delta_q": self.delta_q,
            "count": self.count,
            "p_divides_c0": self.p_divides_c0,
            "elementary_divisors": list(self.elementary_divisors),
        }


def count_invertible_modules(d: Diagram, p: int, nu: int) -> CountResult:
    """Number of invertible modules: prime-to-p torsion of ``coker A(p^nu)``."""
    if not is_prime(p):
        raise InvalidParameter(f"p={p} is not prime")
    if nu < 1:
        raise InvalidParameter("nu must be positive")
    q = p ** nu
    a = integral_dehn_matrix(d, q)
    snf = smith_normal_form(a, d.v + 1)
    count = 1
    for e in snf.divisors:
        count *= prime_to_p(e, p)
    poly = alexander_from_matrix(dehn_matrix(dehn_presentation(d)))
    return CountResult(
        p=p,
        nu=nu,
        q=q,
        delta_q=evaluate(poly, q),
        count=count,
        p_divides_c0=poly.c0 % p == 0,
        elementary_divisors=snf.divisors,
        poly=poly,
    )


def predicted_level_count(divisors, p: int, level: int) -> int:
    """Classes visible over ``F_{p^level}``: ``prod gcd(d_i, p^level - 1)``."""
    n = p ** level - 1
    out = 1
    for e in divisors:
        out *= gcd(prime_to_p(e, p), n)
    return out
