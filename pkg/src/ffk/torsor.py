"""Torsors for ``(G(k), sigma)`` pulled back along the degree map, for ``G = GL_n``.

A torsor on the knot complement is a homomorphism from the knot group to
``G(k) x| <sigma>`` sending every meridian to ``(g_i, sigma^nu)``.  Writing
the Wirtinger relations in the semidirect product turns them into word
equations in the ``g_i`` with Frobenius twists.  Over the algebraic closure
Lang's theorem conjugates the first arc to ``1``; what remains of the gauge
group is the finite group ``G^sigma = GL_n(F_q)`` acting by conjugation.

Words are tuples of letters ``(symbol, shift, exponent)`` standing for
``sigma^(nu * shift)(g_symbol) ** exponent``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .diagram import Diagram
from .errors import BudgetExceeded, InvalidParameter
from .finitefield import FieldCtx, embedding, make_field
from .presentation import WirtingerPresentation, wirtinger_presentation

Letter = tuple[int, int, int]
TWord = tuple[Letter, ...]


# -- symbolic words ------------------------------------------------------------

def reduce_word(letters) -> TWord:
    out: list[Letter] = []
    for s, k, e in letters:
        if out and out[-1] == (s, k, -e):
            out.pop()
        else:
            out.append((s, k, e))
    return tuple(out)


def invert(w: TWord) -> TWord:
    return tuple((s, k, -e) for s, k, e in reversed(w))


def shift(w: TWord, n: int) -> TWord:
    return tuple((s, k + n, e) for s, k, e in w)


@dataclass(frozen=True)
class Twisted:
    """An element ``(word, sigma^(nu * degree))`` of the semidirect product."""

    word: TWord
    degree: int

    def __mul__(self, other: "Twisted") -> "Twisted":
        return Twisted(reduce_word(self.word + shift(other.word, self.degree)),
                       self.degree + other.degree)

    def inverse(self) -> "Twisted":
        return Twisted(shift(invert(self.word), -self.degree), -self.degree)

    def __pow__(self, e: int) -> "Twisted":
        if e == 1:
            return self
        if e == -1:
            return self.inverse()
        raise ValueError("only +-1 powers are needed")


def word_str(w: TWord) -> str:
    if not w:
        return "1"
    parts = []
    for s, k, e in w:
        base = f"g{s}" if k == 0 else f"s^{k}(g{s})"
        parts.append(base if e == 1 else base + "^-1")
    return " ".join(parts)


@dataclass(frozen=True)
class Elimination:
    """Arc words in the free symbols, plus the leftover equations ``word = 1``."""

    arc_words: dict[int, TWord]
    free: tuple[int, ...]
    residuals: tuple[TWord, ...]

    def as_dict(self) -> dict:
        return {
            "free_symbols": [f"g{s}" for s in self.free],
            "arcs": {f"g{a}": word_str(w) for a, w in sorted(self.arc_words.items())},
            "equations": [word_str(w) + " = 1" for w in self.residuals],
        }


def twisted_relations(w: WirtingerPresentation, nu: int = 1) -> list[tuple[TWord, TWord]]:
    """``(lhs, rhs)`` word pairs, one per crossing, with arcs as symbols.

    Shifts count multiples of ``nu``; the equations do not depend on ``nu``
    beyond that unit.
    """
    if nu < 1:
        raise InvalidParameter("nu must be positive")
    gen = {a: Twisted(((a, 0, 1),), 1) for a in range(1, w.generator_count + 1)}
    out = []
    for r in w.relations:
        over = gen[r.over] ** r.sign
        rhs = over * gen[r.incoming] * over.inverse()
        out.append((gen[r.outgoing].word, rhs.word))
    return out


def eliminate(w: WirtingerPresentation) -> Elimination:
    """Frame the first arc to ``1`` and propagate along the relations.

    When no relation determines a new arc, the unknown over-arc used most
    often (smallest id on ties) becomes a free symbol.
    """
    n = w.generator_count
    one = Twisted((), 1)
    known: dict[int, Twisted] = {1: one}
    free: list[int] = []
    pending = list(w.relations)
    residuals: list[TWord] = []

    def sym(a):
        return Twisted(((a, 0, 1),), 1)

    while pending:
        progress = False
        for r in list(pending):
            if r.over not in known:
                continue
            over = known[r.over] ** r.sign
            if r.incoming in known:
                rhs = over * known[r.incoming] * over.inverse()
                if r.outgoing in known:
                    res = reduce_word(invert(known[r.outgoing].word) + rhs.word)
                    if res:
                        residuals.append(res)
                else:
                    known[r.outgoing] = rhs
            elif r.outgoing in known:
                known[r.incoming] = over.inverse() * known[r.outgoing] * over
            else:
                continue
            pending.remove(r)
            progress = True
        if progress:
            continue
        counts: dict[int, int] = {}
        for r in pending:
            for a in (r.over, r.incoming, r.outgoing):
                if a not in known:
                    counts[a] = counts.get(a, 0) + (2 if a == r.over else 1)
        a = min(counts, key=lambda x: (-counts[x], x))
        known[a] = sym(a)
        free.append(a)
    for a in range(1, n + 1):
        if a not in known:
            known[a] = sym(a)
            free.append(a)
    # every arc word is expressed in free symbols only
    return Elimination({a: t.word for a, t in known.items()}, tuple(free), tuple(residuals))


def canonical_form(w: TWord) -> TWord:
    """Representative of ``w = 1`` up to conjugation, inversion, global shift and renaming.

    Renaming substitutes ``g -> sigma^a(g)^(+-1)`` per symbol.
    """
    best = None
    variants = [w, invert(w)]
    symbols = sorted({s for s, _, _ in w})
    for base in variants:
        for rot in range(max(1, len(base))):
            r = base[rot:] + base[:rot]
            r = reduce_word(r)
            if not r:
                return ()
            for flips in itertools.product((1, -1), repeat=len(symbols)):
                sign = dict(zip(symbols, flips))
                flipped = tuple((s, k, e * sign[s]) for s, k, e in r)
                # rename symbols by order of appearance and zero each symbol's first shift
                first_shift: dict[int, int] = {}
                names: dict[int, int] = {}
                out = []
                for s, k, e in flipped:
                    if s not in names:
                        names[s] = len(names)
                        first_shift[s] = k
                    out.append((names[s], k - first_shift[s], e))
                cand = tuple(out)
                if best is None or cand < best:
                    best = cand
    return best


# -- numeric groups -------------------------------------------------------------------

@dataclass(frozen=True)
class GroupSpec:
    """``GL_n`` over ``field``."""

    family: str
    n: int
    field: FieldCtx

    def __post_init__(self):
        if self.family != "GL":
            raise InvalidParameter(f"unsupported group family {self.family!r}")
        if self.n < 1:
            raise InvalidParameter("matrix size must be positive")

    @property
    def order(self) -> int:
        Q = self.field.order
        out = 1
        for i in range(self.n):
            out *= Q ** self.n - Q ** i
        return out

    @property
    def identity(self) -> tuple[int, ...]:
        n = self.n
        return tuple(int(i == j) for i in range(n) for j in range(n))

    def mul(self, a, b):
        n, f = self.n, self.field
        out = []
        for i in range(n):
            for j in range(n):
                acc = 0
                for k in range(n):
                    acc = f.add(acc, f.mul(a[i * n + k], b[k * n + j]))
                out.append(acc)
        return tuple(out)

    def det(self, a) -> int:
        n, f = self.n, self.field
        m = [list(a[i * n:(i + 1) * n]) for i in range(n)]
        d = 1
        for c in range(n):
            piv = next((r for r in range(c, n) if m[r][c]), None)
            if piv is None:
                return 0
            if piv != c:
                m[c], m[piv] = m[piv], m[c]
                d = f.neg(d)
            d = f.mul(d, m[c][c])
            inv = f.inv(m[c][c])
            for r in range(c + 1, n):
                if m[r][c]:
                    t = f.mul(m[r][c], inv)
                    m[r] = [f.sub(x, f.mul(t, y)) for x, y in zip(m[r], m[c])]
        return d

    def inv(self, a):
        n, f = self.n, self.field
        m = [list(a[i * n:(i + 1) * n]) + [int(i == j) for j in range(n)] for i in range(n)]
        for c in range(n):
            piv = next(r for r in range(c, n) if m[r][c])
            m[c], m[piv] = m[piv], m[c]
            inv = f.inv(m[c][c])
            m[c] = [f.mul(inv, x) for x in m[c]]
            for r in range(n):
                if r != c and m[r][c]:
                    t = m[r][c]
                    m[r] = [f.sub(x, f.mul(t, y)) for x, y in zip(m[r], m[c])]
        return tuple(x for row in m for x in row[n:])

    def frob(self, a, k: int):
        """Entrywise ``x -> x^(p^k)``."""
        return tuple(self.field.frob(x, k) for x in a)

    def elements(self):
        f = self.field
        for entries in itertools.product(range(f.order), repeat=self.n * self.n):
            if self.det(entries):
                yield entries

    def fixed_subgroup(self, nu: int):
        """``G^sigma``: invertible matrices with entries in the copy of ``F_{p^nu}``."""
        f = self.field
        emb = embedding(make_field(f.p, nu), f)
        sub = sorted(emb(x) for x in range(f.p ** nu))
        return [g for g in itertools.product(sub, repeat=self.n * self.n) if self.det(g)]


def make_group(family: str, n: int, p: int, level: int) -> GroupSpec:
    return GroupSpec(family, n, make_field(p, level))


def semidirect_mul(spec: GroupSpec, x, y, nu: int = 1):
    """``(a, sigma^i)(b, sigma^j) = (a sigma^i(b), sigma^(i+j))`` with ``sigma = Frob^nu``."""
    (a, i), (b, j) = x, y
    return spec.mul(a, spec.frob(b, nu * i)), i + j


def evaluate_word(spec: GroupSpec, w: TWord, values: dict[int, tuple], nu: int):
    M = spec.field.m
    out = spec.identity
    cache: dict[tuple[int, int, int], tuple] = {}
    for s, k, e in w:
        key = (s, k, e)
        if key not in cache:
            g = spec.frob(values[s], (nu * k) % M)
            cache[key] = g if e == 1 else spec.inv(g)
        out = spec.mul(out, cache[key])
    return out


# -- counting ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TorsorSolution:
    assignment: tuple[tuple[int, ...], ...]  # one matrix per Wirtinger arc


@dataclass
class TorsorCount:
    group: str
    p: int
    nu: int
    level: int
    solutions: int
    classes: int
    stabilizer_orders: list[int]
    fixed_group_order: int
    equations: list[str]
    free_symbols: int
    solution_list: list[TorsorSolution]

    def as_dict(self) -> dict:
        return {
            "group": self.group,
            "p": self.p,
            "nu": self.nu,
            "q": self.p ** self.nu,
            "level": self.level,
            "solutions": self.solutions,
            "classes": self.classes,
            "stabilizer_orders": self.stabilizer_orders,
            "fixed_group_order": self.fixed_group_order,
            "equations": self.equations,
            "free_symbols": self.free_symbols,
        }


def count_torsors(d: Diagram, spec: GroupSpec, nu: int, budget: int = 2 ** 20) -> TorsorCount:
    """Exhaustive solutions at the group's level and their ``G^sigma`` conjugacy classes."""
    M = spec.field.m
    if nu < 1 or M % nu:
        raise InvalidParameter(f"level {M} is not a multiple of nu={nu}")
    w = wirtinger_presentation(d)
    elim = eliminate(w)
    size = spec.order ** len(elim.free)
    if size > budget:
        raise BudgetExceeded(
            f"{len(elim.free)} free symbols over a group of order {spec.order} (budget {budget})",
            space=size)
    if spec.n == 1:
        found = _gl1_search(spec, elim, nu)
    else:
        group = list(spec.elements())
        found = []
        for combo in itertools.product(group, repeat=len(elim.free)):
            values = dict(zip(elim.free, combo))
            if all(evaluate_word(spec, r, values, nu) == spec.identity for r in elim.residuals):
                found.append(combo)
    fixed = spec.fixed_subgroup(nu)
    remaining = set(found)
    stabs = []
    for combo in found:
        if combo not in remaining:
            continue
        orbit = set()
        stab = 0
        for h in fixed:
            hinv = spec.inv(h)
            img = tuple(spec.mul(spec.mul(h, g), hinv) for g in combo)
            orbit.add(img)
            stab += img == combo
        remaining -= orbit
        stabs.append(stab)
    sols = []
    for combo in found:
        values = dict(zip(elim.free, combo))
        sols.append(TorsorSolution(tuple(evaluate_word(spec, elim.arc_words[a], values, nu)
                                         for a in range(1, w.generator_count + 1))))
    name = f"GL{spec.n}"
    return TorsorCount(name, spec.field.p, nu, M, len(found), len(stabs), stabs, len(fixed),
                       [word_str(r) + " = 1" for r in elim.residuals], len(elim.free), sols)


def primitive_element(f: FieldCtx) -> int:
    """Smallest generator of the unit group."""
    n = f.order - 1
    primes, m, d = [], n, 2
    while d * d <= m:
        if m % d == 0:
            primes.append(d)
            while m % d == 0:
                m //= d
        d += 1
    if m > 1:
        primes.append(m)
    for g in f.units():
        if all(f.pow(g, n // r) != 1 for r in primes):
            return g
    raise AssertionError("unit group is not cyclic")


def _gl1_search(spec: GroupSpec, elim: Elimination, nu: int, chunk: int = 2 ** 16):
    """Exhaustive search for ``GL_1`` with units written as powers of a generator.

    ``sigma^k(g^a) = g^(a p^(nu k))``, so each equation becomes a congruence
    on the exponent tuple.  Every tuple is still checked.
    """
    f = spec.field
    M, n_units = f.m, f.order - 1
    coeff = []
    for r in elim.residuals:
        c: dict[int, int] = {}
        for s, k, e in r:
            c[s] = (c.get(s, 0) + e * pow(f.p, (nu * k) % M, n_units)) % n_units
        coeff.append(c)
    space = n_units ** len(elim.free)
    hits = []
    for start in range(0, space, chunk):
        idx = np.arange(start, min(space, start + chunk), dtype=np.int64)
        exps, rest = {}, idx
        for s in reversed(elim.free):
            exps[s] = rest % n_units
            rest = rest // n_units
        keep = np.ones(len(idx), dtype=bool)
        for c in coeff:
            total = np.zeros(len(idx), dtype=np.int64)
            for s, v in c.items():
                total = (total + exps[s] * v) % n_units
            keep &= total == 0
        hits.extend(idx[keep].tolist())
    gen = primitive_element(f)
    found = []
    for h in hits:
        combo = []
        for _ in elim.free:
            h, a = divmod(h, n_units)
            combo.append(a)
        found.append(tuple((f.pow(gen, a),) for a in reversed(combo)))
    found.sort()
    for combo in found:
        values = dict(zip(elim.free, combo))
        if any(evaluate_word(spec, r, values, nu) != spec.identity for r in elim.residuals):
            raise AssertionError(f"exponent search returned a non-solution {combo}")
    return found


def verify_solution(d: Diagram, spec: GroupSpec, sol: TorsorSolution, nu: int) -> bool:
    """Every twisted Wirtinger relation holds for the full arc assignment."""
    w = wirtinger_presentation(d)
    values = dict(enumerate(sol.assignment, start=1))
    for lhs, rhs in twisted_relations(w, nu):
        if evaluate_word(spec, lhs, values, nu) != evaluate_word(spec, rhs, values, nu):
            return False
    return True


def determinant_image(spec: GroupSpec, sol: TorsorSolution) -> TorsorSolution:
    return TorsorSolution(tuple((spec.det(g),) for g in sol.assignment))


def embed_solution(spec: GroupSpec, sol: TorsorSolution, dst: GroupSpec) -> TorsorSolution:
    emb = embedding(spec.field, dst.field)
    return TorsorSolution(tuple(tuple(emb(x) for x in g) for g in sol.assignment))


def stable_torsor_count(d: Diagram, p: int, nu: int, levels, budget: int = 2 ** 20) -> int:
    """Largest GL1 solution count over the given levels (levels are multiples of ``nu``)."""
    return max(count_torsors(d, make_group("GL", 1, p, M), nu, budget).solutions for M in levels)
