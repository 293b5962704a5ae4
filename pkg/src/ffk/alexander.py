"""Alexander polynomial from the region (Dehn) matrix, plus a Fox-calculus check."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .errors import DegenerateDiagram
from .laurent import ONE, ZERO, LaurentPoly, determinant, laurent_gcd
from .presentation import DehnPresentation, WirtingerPresentation, Word

LaurentMatrix = list[list[LaurentPoly]]


@dataclass(frozen=True)
class AlexPoly:
    """``c0 + c1 x + ... + cn x^n`` with ``c0 > 0``."""

    coeffs: tuple[int, ...]

    @classmethod
    def from_laurent(cls, p: LaurentPoly) -> "AlexPoly":
        p = p.normalized()
        if p.is_zero():
            raise DegenerateDiagram("Alexander polynomial vanished")
        return cls(tuple(p.to_list()))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def c0(self) -> int:
        return self.coeffs[0]

    def laurent(self) -> LaurentPoly:
        return LaurentPoly.from_list(self.coeffs)

    def __call__(self, x: int) -> int:
        return evaluate(self, x)

    def is_palindromic(self) -> bool:
        """``c_i = s * c_(n-i)`` for a single sign ``s``."""
        cs = self.coeffs
        return cs == cs[::-1] or cs == tuple(-c for c in cs[::-1])

    def __str__(self):
        return repr(self.laurent())


def dehn_matrix(pres: DehnPresentation, classical: bool = False) -> LaurentMatrix:
    """``v x (v+1)`` matrix: rows are crossings, columns regions ``1..v+1``.

    Row entries are ``1`` at ``j``, ``-1`` at ``m`` and ``-x, x`` (left-handed)
    or ``-1/x, 1/x`` (right-handed) at ``k, l``; the null region's column is
    left off and repeated regions add up.  ``classical=True`` multiplies
    right-handed rows by ``x``.
    """
    ncols = pres.generator_count
    rows = []
    for rel in pres.relations:
        t = rel.twist
        xt = LaurentPoly.monomial(1, t)
        row = [ZERO] * ncols
        for region, entry in ((rel.j, ONE), (rel.k, -xt), (rel.l, xt), (rel.m, -ONE)):
            if region != 0:
                row[region - 1] = row[region - 1] + entry
        if classical and t < 0:
            row = [e.shift(1) for e in row]
        rows.append(row)
    return rows


def maximal_minors(a: LaurentMatrix, ncols: int | None = None):
    nrows = len(a)
    ncols = len(a[0]) if a else (ncols or 0)
    k = min(nrows, ncols)
    for rs in combinations(range(nrows), k):
        for cs in combinations(range(ncols), k):
            yield determinant([[a[r][c] for c in cs] for r in rs])


def alexander_from_matrix(a: LaurentMatrix, ncols: int | None = None) -> AlexPoly:
    """Gcd of the maximal minors, normalized to ``c0 > 0`` with no negative powers."""
    if not a:
        return AlexPoly((1,))
    g = laurent_gcd(maximal_minors(a, ncols))
    if g.is_zero():
        raise DegenerateDiagram("all maximal minors vanish")
    return AlexPoly.from_laurent(g)


def fox_derivative(word: Word, gen: int) -> LaurentPoly:
    """Abelianized Fox derivative of ``word`` with every generator sent to ``x``."""
    out: dict[int, int] = {}
    e = 0
    for g, s in word:
        if g == gen:
            k = e if s > 0 else e - 1
            out[k] = out.get(k, 0) + s
        e += s
    return LaurentPoly(out)


def fox_matrix(w: WirtingerPresentation) -> LaurentMatrix:
    return [[fox_derivative(r, g) for g in range(1, w.generator_count + 1)]
            for r in w.relators()]


def fox_alexander(w: WirtingerPresentation) -> AlexPoly:
    if not w.relations:
        return AlexPoly((1,))
    jac = [row[:-1] for row in fox_matrix(w)]
    return alexander_from_matrix(jac, w.generator_count - 1)


def evaluate(poly: AlexPoly, q: int) -> int:
    total = 0
    for c in reversed(poly.coeffs):
        total = total * q + c
    return total


def alexander_polynomial(d, method: str = "dehn") -> AlexPoly:
    from .presentation import dehn_presentation, wirtinger_presentation

    if method == "dehn":
        return alexander_from_matrix(dehn_matrix(dehn_presentation(d)))
    if method == "fox":
        return fox_alexander(wirtinger_presentation(d))
    raise ValueError(f"unknown method {method!r}")
