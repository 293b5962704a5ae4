"""Rank-one local systems counted by brute force over finite fields.

A point-framed rank-one local system is a tuple ``(z_1, ..., z_{v+1})`` of
units, one per bounded region, with ``z_0 = 1`` for the null region and one
relation per crossing::

    z_j * z_k^(-q^t) * z_l^(q^t) * z_m^(-1) = 1        (t = +1 left, -1 right)

where ``z^(q^t)`` is a power of Frobenius (``t = -1`` uses the inverse
Frobenius of the finite level).  Changing the framing by ``y`` multiplies
``z_j`` by ``y^(q^I(j) - 1)``.

Over the algebraic closure two cocycles defined over ``F_{p^M}`` are
equivalent iff they differ by ``y^(q^I(j) - 1)`` for some ``y`` with
``y^(q-1)`` in ``F_{p^M}``; writing ``u = y^(q-1)`` this is
``u^([I(j)]_q)`` with the q-integer ``[I]_q = (q^I - 1)/(q - 1)``.  That
action is free, and fixing ``z_{j0} = 1`` at a region with ``|I(j0)| = 1``
picks exactly one cocycle from each class.  Counting that slice at
increasing levels is how :func:`stable_class_count` works.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .diagram import Diagram
from .errors import BudgetExceeded, InvalidParameter, NotStabilized
from .finitefield import MAX_ORDER, FieldCtx, embedding, make_field
from .presentation import DehnPresentation, dehn_presentation

DEFAULT_BUDGET = 2 ** 20
DEFAULT_CAP = 12
CHUNK = 2 ** 15


def default_budget() -> int:
    env = os.environ.get("FFK_BUDGET")
    return int(env) if env else DEFAULT_BUDGET


# -- relations in exponent form ------------------------------------------------

@dataclass(frozen=True)
class _Relation:
    crossing: int
    # region -> {frobenius power in units of nu: integer coefficient}
    terms: dict[int, dict[int, int]]

    def solvable_for(self, region: int) -> bool:
        t = self.terms[region]
        return len(t) == 1 and abs(next(iter(t.values()))) == 1


def _relations(pres: DehnPresentation) -> list[_Relation]:
    out = []
    for rel in pres.relations:
        t = rel.twist
        terms: dict[int, dict[int, int]] = {}
        for region, sign, phi in ((rel.j, 1, 0), (rel.k, -1, t), (rel.l, 1, t), (rel.m, -1, 0)):
            if region == 0:
                continue
            slot = terms.setdefault(region, {})
            slot[phi] = slot.get(phi, 0) + sign
        terms = {r: {ph: c for ph, c in s.items() if c} for r, s in terms.items()}
        terms = {r: s for r, s in terms.items() if s}
        out.append(_Relation(rel.crossing, terms))
    return out


def _plan(relations: list[_Relation], regions: list[int], known: set[int]):
    """Order of solve / check / enumerate steps, chosen once per diagram."""
    known = set(known)
    steps = []
    remaining = list(relations)
    while remaining:
        done = [r for r in remaining if all(g in known for g in r.terms)]
        for r in done:
            steps.append(("check", r, None))
            remaining.remove(r)
        if not remaining:
            break
        for r in remaining:
            unknown = [g for g in r.terms if g not in known]
            if len(unknown) == 1 and r.solvable_for(unknown[0]):
                steps.append(("solve", r, unknown[0]))
                known.add(unknown[0])
                remaining.remove(r)
                break
        else:
            counts: dict[int, int] = {}
            for r in remaining:
                for g in r.terms:
                    if g not in known:
                        counts[g] = counts.get(g, 0) + 1
            g = min(counts, key=lambda x: (-counts[x], x))
            steps.append(("free", None, g))
            known.add(g)
    for g in regions:
        if g not in known:
            steps.append(("free", None, g))
            known.add(g)
    return steps


# -- data types ------------------------------------------------------------------

@dataclass(frozen=True)
class Cocycle:
    level: FieldCtx
    z: tuple[int, ...]  # encoded units for regions 1..v+1

    def coeffs(self) -> list[list[int]]:
        return [self.level.coeffs(x) for x in self.z]


@dataclass
class ClassTable:
    level: FieldCtx
    classes: list[list[tuple[int, ...]]]
    automorphism_orders: list[int]
    total_cocycles: int
    coboundary_image_size: int

    def __len__(self):
        return len(self.classes)


@dataclass
class LevelReport:
    level: int
    count: int | None
    status: str  # "ok" or why the level was skipped
    free_points: int | None = None

    def as_dict(self) -> dict:
        return {"level": self.level, "count": self.count, "status": self.status}


@dataclass
class StableCount:
    value: int
    p: int
    nu: int
    stable_level: int
    levels: list[LevelReport]
    representatives: list[Cocycle]
    automorphism_orders: list[int]
    aut_flag: str = "ok"
    orbifold: Fraction = field(default=Fraction(0))

    def as_dict(self) -> dict:
        return {
            "p": self.p,
            "nu": self.nu,
            "q": self.p ** self.nu,
            "levels": [lv.as_dict() for lv in self.levels],
            "stable_count": self.value,
            "stable_level": self.stable_level,
            "class_representatives": [c.coeffs() for c in self.representatives],
            "automorphism_orders": self.automorphism_orders,
            "automorphism_check": self.aut_flag,
            "orbifold_count": {"num": self.orbifold.numerator, "den": self.orbifold.denominator},
        }


# -- enumeration -------------------------------------------------------------------

class _Level:
    """One finite level ``F_{p^M}`` with ``q = p^nu``."""

    def __init__(self, p: int, nu: int, M: int):
        if M % nu:
            raise InvalidParameter(f"level {M} is not a multiple of nu={nu}")
        self.ctx = make_field(p, M)
        self.nu = nu
        self.M = M

    def frob_q(self, arr, phi: int):
        return self.ctx.frob_array(arr, (self.nu * phi) % self.M)

    def term(self, num, den, powers: dict[int, int]):
        """``(num/den)`` raised to ``sum c * q^phi`` as a fraction of arrays."""
        ctx = self.ctx
        top = _ones_like(num)
        bot = _ones_like(num)
        for phi, c in powers.items():
            a, b = self.frob_q(num, phi), self.frob_q(den, phi)
            if c < 0:
                a, b = b, a
            for _ in range(abs(c)):
                top = ctx.mul_array(top, a)
                bot = ctx.mul_array(bot, b)
        return top, bot


def _ones_like(arr):
    out = np.zeros_like(arr)
    out[:, 0] = 1
    return out


def _enumerate(d: Diagram, p: int, nu: int, M: int, fixed: dict[int, int], budget: int):
    pres = dehn_presentation(d)
    level = _Level(p, nu, M)
    ctx = level.ctx
    regions = pres.generators
    rels = _relations(pres)
    steps = _plan(rels, regions, set(fixed))
    free = [g for kind, _, g in steps if kind == "free"]
    n_units = ctx.order - 1
    space = n_units ** len(free)
    if space > budget:
        raise BudgetExceeded(
            f"{len(free)} free scalars over F_{p}^{M} give {space} points (budget {budget})",
            space=space)

    units = np.arange(1, ctx.order, dtype=np.int64)
    found: list[tuple[int, ...]] = []
    for start in range(0, space, CHUNK):
        idx = np.arange(start, min(space, start + CHUNK), dtype=np.int64)
        n = len(idx)
        cols = {}
        rest = idx.copy()
        for g in reversed(free):
            cols[g] = units[rest % n_units]
            rest //= n_units
        state: dict[int, tuple[np.ndarray, np.ndarray]] = {}
        one = ctx.to_array(np.ones(n, dtype=np.int64))
        for g, val in fixed.items():
            state[g] = (ctx.to_array(np.full(n, val, dtype=np.int64)), one)
        alive = np.ones(n, dtype=bool)
        for kind, rel, g in steps:
            if kind == "free":
                state[g] = (ctx.to_array(cols[g]), one)
                continue
            num, den = one, one
            for h, powers in rel.terms.items():
                if h == g:
                    continue
                a, b = level.term(*state[h], powers)
                num, den = ctx.mul_array(num, a), ctx.mul_array(den, b)
            if kind == "check":
                alive &= (num == den).all(axis=1)
                continue
            (phi, c), = rel.terms[g].items()
            # z_g^(c q^phi) * num/den = 1
            if c > 0:
                num, den = den, num
            state[g] = (level.frob_q(num, -phi), level.frob_q(den, -phi))
        if not alive.any():
            continue
        values = []
        for g in regions:
            num, den = state[g]
            num, den = num[alive], den[alive]
            values.append(ctx.from_array(ctx.mul_array(num, ctx.pow_array(den, -1))))
        for row in zip(*values):
            found.append(tuple(int(x) for x in row))
    found.sort()
    cocycles = [Cocycle(ctx, z) for z in found]
    for c in cocycles:
        if not verify_cocycle(pres, c, nu):
            raise AssertionError(f"enumerated tuple {c.z} fails a crossing relation")
    return cocycles


def verify_cocycle(pres: DehnPresentation, c: Cocycle, nu: int) -> bool:
    """Scalar re-check of every crossing relation."""
    ctx = c.level
    M = ctx.m
    z = {0: 1, **{g: c.z[g - 1] for g in pres.generators}}
    if any(x == 0 for x in c.z):
        return False
    for rel in pres.relations:
        fq = (nu * rel.twist) % M
        lhs = ctx.mul(z[rel.j], ctx.frob(z[rel.l], fq))
        rhs = ctx.mul(z[rel.m], ctx.frob(z[rel.k], fq))
        if lhs != rhs:
            return False
    return True


def enumerate_cocycles(d: Diagram, p: int, nu: int, M: int,
                       budget: int | None = None) -> list[Cocycle]:
    """Every rank-one point-framed local system over ``F_{p^M}``."""
    return _enumerate(d, p, nu, M, {}, budget or default_budget())


def slice_region(d: Diagram) -> int | None:
    """Smallest bounded region with index +-1 (absent only for the unknot's mirror cases)."""
    idx = {r.id: r.index for r in d.regions if r.id}
    cands = [g for g, i in sorted(idx.items()) if abs(i) == 1]
    return cands[0] if cands else None


def class_slice(d: Diagram, p: int, nu: int, M: int, budget: int | None = None) -> list[Cocycle]:
    """One cocycle per class over the algebraic closure that is defined over ``F_{p^M}``."""
    j0 = slice_region(d)
    return _enumerate(d, p, nu, M, {j0: 1}, budget or default_budget())


# -- coboundaries and orbits ----------------------------------------------------------

def coboundary(ctx: FieldCtx, y: int, indices: dict[int, int], nu: int) -> tuple[int, ...]:
    """``(y^(q^I(j) - 1))_j`` over the bounded regions."""
    yinv = ctx.inv(y)
    return tuple(ctx.mul(ctx.frob(y, nu * indices[g]), yinv)
                 for g in sorted(indices) if g != 0)


def q_integer_power(ctx: FieldCtx, u: int, index: int, nu: int) -> int:
    """``u^([index]_q)`` with ``[I]_q = (q^I - 1)/(q - 1)``, via Frobenius powers only."""
    out = 1
    if index > 0:
        for i in range(index):
            out = ctx.mul(out, ctx.frob(u, nu * i))
    elif index < 0:
        for i in range(1, -index + 1):
            out = ctx.mul(out, ctx.frob(u, -nu * i))
        out = ctx.inv(out)
    return out


def closure_coboundary(ctx: FieldCtx, u: int, indices: dict[int, int], nu: int) -> tuple[int, ...]:
    return tuple(q_integer_power(ctx, u, indices[g], nu) for g in sorted(indices) if g != 0)


def _orbits(cocycles, image, ctx):
    remaining = set(cocycles)
    classes = []
    for z in sorted(cocycles):
        if z not in remaining:
            continue
        orbit = {tuple(ctx.mul(a, b) for a, b in zip(z, w)) for w in image}
        if not orbit <= set(cocycles):
            raise AssertionError("coboundary action leaves the cocycle set")
        remaining -= orbit
        classes.append(sorted(orbit))
    return classes


def coboundary_orbits(cocycles: list[Cocycle], indices: dict[int, int], nu: int) -> ClassTable:
    """Classes at the finite level: orbits of ``z_j -> y^(q^I(j)-1) z_j``, ``y`` in ``F_{p^M}^*``."""
    if not cocycles:
        raise InvalidParameter("no cocycles given")
    ctx = cocycles[0].level
    zs = [c.z for c in cocycles]
    images = [coboundary(ctx, y, indices, nu) for y in ctx.units()]
    trivial = tuple(1 for _ in zs[0])
    stab = sum(1 for w in images if w == trivial)
    image = sorted(set(images))
    classes = _orbits(zs, image, ctx)
    return ClassTable(ctx, classes, [stab] * len(classes), len(zs), len(image))


def closure_orbits(cocycles: list[Cocycle], indices: dict[int, int], nu: int) -> ClassTable:
    """Classes over the algebraic closure among cocycles defined at this level."""
    ctx = cocycles[0].level
    zs = [c.z for c in cocycles]
    image = sorted({closure_coboundary(ctx, u, indices, nu) for u in ctx.units()})
    classes = _orbits(zs, image, ctx)
    return ClassTable(ctx, classes, [1] * len(classes), len(zs), len(image))


def automorphism_order(d: Diagram, p: int, nu: int, M: int) -> int:
    """Number of ``y`` in ``F_{p^M}^*`` fixing every cocycle: ``y^(q^I(j)) = y`` for all j."""
    ctx = make_field(p, M)
    indices = {r.id: r.index for r in d.regions}
    ys = ctx.to_array(np.arange(1, ctx.order, dtype=np.int64))
    keep = np.ones(len(ys), dtype=bool)
    for g in sorted(indices):
        if g:
            keep &= (ctx.frob_array(ys, (nu * indices[g]) % M) == ys).all(axis=1)
    return int(keep.sum())


def embed_cocycle(c: Cocycle, dst: FieldCtx) -> Cocycle:
    emb = embedding(c.level, dst)
    return Cocycle(dst, tuple(emb(x) for x in c.z))


# -- stabilization -----------------------------------------------------------------------

def scan_levels(d: Diagram, p: int, nu: int, cap: int = DEFAULT_CAP, budget: int | None = None,
                max_order: int = MAX_ORDER):
    """Class counts over ``F_{p^(nu L)}`` for ``L = 1..cap``; returns reports and slices."""
    budget = budget or default_budget()
    reports, slices = [], {}
    for L in range(1, cap + 1):
        M = nu * L
        if p ** M > max_order:
            reports.append(LevelReport(M, None, "skipped: field too large"))
            continue
        try:
            sl = class_slice(d, p, nu, M, budget)
        except BudgetExceeded as exc:
            reports.append(LevelReport(M, None, "skipped: " + str(exc)))
            continue
        reports.append(LevelReport(M, len(sl), "ok"))
        slices[M] = sl
    return reports, slices


def stable_class_count(d: Diagram, p: int, nu: int, cap: int = DEFAULT_CAP,
                       budget: int | None = None, max_order: int = MAX_ORDER) -> StableCount:
    """Number of invertible modules over the closure, by enumeration.

    Levels ``M = nu, 2 nu, ..., cap * nu`` are scanned.  Each count is a
    lower bound and counts can only grow along divisibility, so the answer is
    the largest count.  It is accepted once a later scanned level exists and
    every scanned count divides it; otherwise :class:`NotStabilized` is raised
    with the report.
    """
    if nu < 1 or cap < 1:
        raise InvalidParameter("nu and cap must be positive")
    make_field(p, 1)
    reports, slices = scan_levels(d, p, nu, cap, budget, max_order)
    done = [r for r in reports if r.count is not None]
    report = [r.as_dict() for r in reports]
    if not done:
        raise NotStabilized("no level fit the budget", report=report)
    best = max(r.count for r in done)
    first = next(r for r in done if r.count == best)
    later = [r for r in done if r.level > first.level]
    if not later or any(best % r.count for r in done):
        raise NotStabilized(
            f"count {best} at level {first.level} not confirmed by a later level",
            report=report)
    M = first.level
    reps = slices[M]
    aut = automorphism_order(d, p, nu, M)
    flag = "ok"
    if p ** (2 * M) <= max_order:
        aut2 = automorphism_order(d, p, nu, 2 * M)
        if aut2 != aut:
            aut, flag = aut2, "doubled level disagrees"
    else:
        flag = "doubled level not rechecked (field too large)"
    auts = [aut] * len(reps)
    orb = sum((Fraction(1, a) for a in auts), Fraction(0))
    return StableCount(best, p, nu, M, reports, reps, auts, flag, orb)


def orbifold_count(d: Diagram, p: int, nu: int, cap: int = DEFAULT_CAP,
                   budget: int | None = None) -> Fraction:
    """Sum over stable classes of ``1/|Aut|``."""
    return stable_class_count(d, p, nu, cap, budget).orbifold
