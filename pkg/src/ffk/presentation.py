"""Dehn and Wirtinger presentations of the knot group read off a diagram."""

from __future__ import annotations

from dataclasses import dataclass

from .diagram import LOWER_LEFT, LOWER_RIGHT, UPPER_LEFT, UPPER_RIGHT, Diagram, Handedness
from .errors import InconsistentDiagram

Word = tuple[tuple[int, int], ...]  # (generator, +1 | -1) letters


@dataclass(frozen=True)
class DehnRelation:
    """``g_j g_k^-1 g_l g_m^-1 = 1`` at one crossing.

    Slots are read with the under-strand pointing up: ``j`` upper left,
    ``k`` lower left, ``l`` lower right, ``m`` upper right.  Region 0 is the
    null region (``g_0 = 1``).  ``twist`` is ``I(j) - I(k)``: +1 for a
    left-handed crossing, -1 for a right-handed one.
    """

    crossing: int
    j: int
    k: int
    l: int  # noqa: E741
    m: int
    handedness: Handedness

    @property
    def twist(self) -> int:
        return 1 if self.handedness is Handedness.LEFT else -1

    @property
    def slots(self) -> tuple[int, int, int, int]:
        return (self.j, self.k, self.l, self.m)

    def word(self) -> Word:
        letters = [(self.j, 1), (self.k, -1), (self.l, 1), (self.m, -1)]
        return tuple((g, s) for g, s in letters if g != 0)


@dataclass(frozen=True)
class DehnPresentation:
    generator_count: int
    relations: tuple[DehnRelation, ...]
    indices: dict[int, int]  # region id -> Alexander index, region 0 included

    @property
    def generators(self) -> list[int]:
        return list(range(1, self.generator_count + 1))


@dataclass(frozen=True)
class WirtingerRelation:
    """``x_out = x_over^s x_in x_over^-s`` with ``s`` the crossing sign."""

    crossing: int
    incoming: int
    over: int
    outgoing: int
    sign: int

    def relator(self) -> Word:
        s = self.sign
        return _reduce(((self.over, s), (self.incoming, 1), (self.over, -s),
                        (self.outgoing, -1)))


@dataclass(frozen=True)
class WirtingerPresentation:
    generator_count: int
    relations: tuple[WirtingerRelation, ...]
    arc_of_edge: dict[int, int]

    def relators(self) -> list[Word]:
        return [r.relator() for r in self.relations]

    def drop_relation(self, i: int) -> "WirtingerPresentation":
        rels = self.relations[:i] + self.relations[i + 1:]
        return WirtingerPresentation(self.generator_count, rels, self.arc_of_edge)


def _reduce(letters) -> Word:
    out: list[tuple[int, int]] = []
    for g, s in letters:
        if out and out[-1] == (g, -s):
            out.pop()
        else:
            out.append((g, s))
    return tuple(out)


def dehn_presentation(d: Diagram) -> DehnPresentation:
    indices = {r.id: r.index for r in d.regions}
    rels = []
    for c in d.crossings:
        rel = DehnRelation(
            crossing=c.id,
            j=d.region_at(c.id, UPPER_LEFT),
            k=d.region_at(c.id, LOWER_LEFT),
            l=d.region_at(c.id, LOWER_RIGHT),
            m=d.region_at(c.id, UPPER_RIGHT),
            handedness=c.handedness,
        )
        if indices[rel.j] - indices[rel.k] != rel.twist:
            raise InconsistentDiagram(f"index jump at crossing {c.id} contradicts its handedness")
        rels.append(rel)
    return DehnPresentation(d.v + 1, tuple(rels), indices)


def wirtinger_presentation(d: Diagram) -> WirtingerPresentation:
    if not d.crossings:
        return WirtingerPresentation(1, (), {1: 1})
    n = d.edge_count
    starts_arc = set()
    for c in d.crossings:
        starts_arc.add(c.edges[2])
    if len(starts_arc) != d.v:
        raise InconsistentDiagram("under-crossing edges are not distinct")
    first = min(starts_arc)
    arc_of_edge = {}
    arc = 0
    for step in range(n):
        e = (first - 1 + step) % n + 1
        if e in starts_arc:
            arc += 1
        arc_of_edge[e] = arc
    rels = tuple(
        WirtingerRelation(
            crossing=c.id,
            incoming=arc_of_edge[c.edges[0]],
            over=arc_of_edge[c.edges[1]],
            outgoing=arc_of_edge[c.edges[2]],
            sign=c.handedness.sign,
        )
        for c in d.crossings)
    return WirtingerPresentation(d.v, rels, arc_of_edge)


def word_str(word: Word, prefix: str = "g") -> str:
    if not word:
        return "1"
    return " ".join(f"{prefix}{g}" + ("" if s == 1 else "^-1") for g, s in word)


def presentations_json(d: Diagram) -> dict:
    dehn = dehn_presentation(d)
    wirt = wirtinger_presentation(d)
    return {
        "dehn": {
            "generators": [f"g{i}" for i in dehn.generators],
            "indices": {f"g{i}": dehn.indices[i] for i in dehn.generators},
            "relations": [
                {
                    "crossing": r.crossing,
                    "regions": list(r.slots),
                    "handedness": r.handedness.value,
                    "word": word_str(r.word()),
                }
                for r in dehn.relations
            ],
        },
        "wirtinger": {
            "generators": [f"x{i}" for i in range(1, wirt.generator_count + 1)],
            "relations": [word_str(r.relator(), "x") for r in wirt.relations],
        },
    }
