"""Integer Laurent polynomials in one variable ``x``.

Only what the Alexander-polynomial code needs: ring operations, exact
division, gcd in Z[x, 1/x] (defined up to units ``+-x^k``) and fraction-free
determinants.
"""

from __future__ import annotations

from functools import reduce
from math import gcd


class LaurentPoly:
    """Finite sum of ``c * x**e`` with integer ``c`` and integer ``e``."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=None):
        if coeffs is None:
            coeffs = {}
        elif isinstance(coeffs, int):
            coeffs = {0: coeffs}
        self.coeffs = {int(e): int(c) for e, c in dict(coeffs).items() if c}

    @classmethod
    def monomial(cls, c: int, e: int) -> "LaurentPoly":
        return cls({e: c})

    @classmethod
    def from_list(cls, cs, shift: int = 0) -> "LaurentPoly":
        return cls({i + shift: c for i, c in enumerate(cs)})

    def is_zero(self) -> bool:
        return not self.coeffs

    def low(self) -> int:
        return min(self.coeffs)

    def high(self) -> int:
        return max(self.coeffs)

    def to_list(self) -> list[int]:
        """Coefficients from the lowest to the highest exponent."""
        if not self.coeffs:
            return [0]
        lo, hi = self.low(), self.high()
        return [self.coeffs.get(e, 0) for e in range(lo, hi + 1)]

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPoly(other)
        return isinstance(other, LaurentPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(tuple(sorted(self.coeffs.items())))

    def __add__(self, other):
        other = _lift(other)
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            out[e] = out.get(e, 0) + c
        return LaurentPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({e: -c for e, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-_lift(other))

    def __rsub__(self, other):
        return _lift(other) - self

    def __mul__(self, other):
        other = _lift(other)
        out: dict[int, int] = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return LaurentPoly(out)

    __rmul__ = __mul__

    def shift(self, k: int) -> "LaurentPoly":
        return LaurentPoly({e + k: c for e, c in self.coeffs.items()})

    def __call__(self, x):
        """Evaluate at ``x``; ``Fraction`` works for negative exponents."""
        from fractions import Fraction

        total = Fraction(0) if any(e < 0 for e in self.coeffs) else 0
        for e, c in self.coeffs.items():
            total += c * (Fraction(x) ** e if e < 0 else x ** e)
        return total

    def content(self) -> int:
        return reduce(gcd, self.coeffs.values(), 0)

    def exact_div(self, other: "LaurentPoly") -> "LaurentPoly":
        """Quotient when ``other`` divides ``self`` exactly in Z[x, 1/x]."""
        q, r = _divmod(self, _lift(other))
        if not r.is_zero():
            raise ArithmeticError("division is not exact")
        return q

    def normalized(self) -> "LaurentPoly":
        """Unit-normal form: lowest exponent 0 and positive constant term."""
        if not self.coeffs:
            return self
        p = self.shift(-self.low())
        return -p if p.coeffs[0] < 0 else p

    def __repr__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for e in sorted(self.coeffs, reverse=True):
            c = self.coeffs[e]
            mono = "" if e == 0 else ("x" if e == 1 else f"x^{e}")
            if mono and abs(c) == 1:
                term = ("-" if c < 0 else "+") + mono
            else:
                term = f"{c:+d}" + (f"*{mono}" if mono else "")
            parts.append(term)
        s = "".join(parts)
        return s[1:] if s.startswith("+") else s


def _lift(v) -> LaurentPoly:
    return v if isinstance(v, LaurentPoly) else LaurentPoly(int(v))


X = LaurentPoly.monomial(1, 1)
ONE = LaurentPoly(1)
ZERO = LaurentPoly()


def _divmod(a: LaurentPoly, b: LaurentPoly):
    """Long division by the leading term; exact over Z when b divides a."""
    if b.is_zero():
        raise ZeroDivisionError
    q: dict[int, int] = {}
    r = a
    bh, bl = b.high(), b.low()
    lead = b.coeffs[bh]
    while not r.is_zero() and r.high() - r.low() >= bh - bl:
        rh = r.high()
        c, rem = divmod(r.coeffs[rh], lead)
        if rem:
            break
        e = rh - bh
        q[e] = q.get(e, 0) + c
        r = r - LaurentPoly.monomial(c, e) * b
    return LaurentPoly(q), r


def _prem_gcd(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    """Primitive polynomial remainder sequence gcd of ordinary polynomials."""
    a, b = a.normalized(), b.normalized()
    ca, cb = a.content(), b.content()
    g_content = gcd(ca, cb)
    a = LaurentPoly({e: c // ca for e, c in a.coeffs.items()})
    b = LaurentPoly({e: c // cb for e, c in b.coeffs.items()})
    while not b.is_zero():
        if a.high() < b.high():
            a, b = b, a
        # pseudo-remainder of a by b
        d = a.high() - b.high()
        lead = b.coeffs[b.high()]
        r = a * (lead ** (d + 1))
        while not r.is_zero() and r.high() >= b.high():
            c = r.coeffs[r.high()] // lead
            r = r - LaurentPoly.monomial(c, r.high() - b.high()) * b
        a, b = b, r
        if not b.is_zero():
            b = b.normalized()
            b = LaurentPoly({e: c // b.content() for e, c in b.coeffs.items()})
    a = a.normalized()
    return LaurentPoly({e: c * g_content for e, c in a.coeffs.items()})


def laurent_gcd(values) -> LaurentPoly:
    """Gcd of Laurent polynomials, returned in unit-normal form (0 if all vanish)."""
    out = ZERO
    for v in values:
        v = _lift(v)
        if v.is_zero():
            continue
        out = v.normalized() if out.is_zero() else _prem_gcd(out, v)
        if out == ONE:
            break
    return out


def determinant(rows) -> LaurentPoly:
    """Determinant of a square matrix of Laurent polynomials (Bareiss)."""
    n = len(rows)
    if n == 0:
        return ONE
    # clear negative exponents row by row; undone at the end
    shift = 0
    m = []
    for row in rows:
        row = [_lift(e) for e in row]
        lows = [e.low() for e in row if not e.is_zero()]
        s = -min(lows) if lows else 0
        shift += s
        m.append([e.shift(s) for e in row])
    sign = 1
    prev = ONE
    for k in range(n - 1):
        if m[k][k].is_zero():
            swap = next((i for i in range(k + 1, n) if not m[i][k].is_zero()), None)
            if swap is None:
                return ZERO
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]).exact_div(prev)
            m[i][k] = ZERO
        prev = m[k][k]
    det = m[n - 1][n - 1]
    return (det * sign).shift(-shift)
