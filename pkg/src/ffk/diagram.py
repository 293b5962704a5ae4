"""Oriented knot diagrams in planar-diagram (PD) notation.

A crossing ``X[a, b, c, d]`` lists its four edge labels counterclockwise,
starting with the incoming under-strand edge ``a``.  Drawn with ``a`` at the
bottom, the under-strand runs upward from ``a`` to ``c`` and the over-strand
joins ``b`` (right) and ``d`` (left).

Quadrant ``i`` of a crossing is the corner between positions ``i`` and
``i + 1`` (counterclockwise), so in that upright frame quadrant 0 is lower
right, 1 upper right, 2 upper left and 3 lower left.  The two left quadrants
(2 and 3) are the ones carrying Alexander's dots.
"""

from __future__ import annotations

import enum
import json
import re
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property

from .errors import InconsistentDiagram, MalformedNotation

UPPER_LEFT, LOWER_LEFT, LOWER_RIGHT, UPPER_RIGHT = 2, 3, 0, 1


class Handedness(str, enum.Enum):
    """Crossing type in the frame where the under-strand points up.

    ``LEFT``: the over-strand passes from left to right.  ``RIGHT``: from
    right to left.  ``LEFT`` crossings are positive in the usual writhe
    convention.
    """

    LEFT = "left"
    RIGHT = "right"

    @property
    def sign(self) -> int:
        return 1 if self is Handedness.LEFT else -1


@dataclass(frozen=True)
class Crossing:
    id: int
    edges: tuple[int, int, int, int]
    over_out: int  # position (1 or 3) where the over-strand leaves

    @property
    def over_in(self) -> int:
        return (self.over_out + 2) % 4

    @property
    def handedness(self) -> Handedness:
        return Handedness.LEFT if self.over_out == 1 else Handedness.RIGHT

    def is_outgoing(self, pos: int) -> bool:
        return pos == 2 or pos == self.over_out


@dataclass(frozen=True)
class Region:
    id: int
    corners: tuple[tuple[int, int], ...]
    edges: frozenset[int]
    index: int

    def as_dict(self) -> dict:
        return {
            "id": self.id,
            "corners": [list(c) for c in self.corners],
            "index": self.index,
        }


@dataclass(frozen=True)
class Diagram:
    """A validated one-component knot diagram with edges labelled 1..2v.

    Edge ``i`` flows into edge ``i + 1`` (cyclically).  Construct through
    :func:`parse_pd` unless the labels are already normalized.
    """

    crossings: tuple[Crossing, ...] = ()
    name: str | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.crossings:
            _check_planar_structure(self)

    @property
    def v(self) -> int:
        return len(self.crossings)

    @property
    def edge_count(self) -> int:
        return 2 * self.v

    @property
    def component_count(self) -> int:
        return 1

    @cached_property
    def _other_end(self) -> dict[tuple[int, int], tuple[int, int]]:
        seen: dict[int, tuple[int, int]] = {}
        other = {}
        for c in self.crossings:
            for pos, e in enumerate(c.edges):
                if e in seen:
                    other[(c.id, pos)] = seen[e]
                    other[seen[e]] = (c.id, pos)
                else:
                    seen[e] = (c.id, pos)
        return other

    def other_end(self, crossing: int, pos: int) -> tuple[int, int]:
        return self._other_end[(crossing, pos)]

    @cached_property
    def regions(self) -> tuple[Region, ...]:
        return tuple(_trace_regions(self))

    @cached_property
    def corner_region(self) -> dict[tuple[int, int], int]:
        return {corner: r.id for r in self.regions for corner in r.corners}

    def region_at(self, crossing: int, quadrant: int) -> int:
        return self.corner_region[(crossing, quadrant % 4)]

    @property
    def null_region(self) -> int:
        return 0

    def writhe(self) -> int:
        return sum(c.handedness.sign for c in self.crossings)

    def pd_string(self) -> str:
        if not self.crossings:
            return "unknot"
        return " ".join("X[%d,%d,%d,%d]" % c.edges for c in self.crossings)

    def as_dict(self) -> dict:
        return {
            "v": self.v,
            "pd": [list(c.edges) for c in self.crossings],
            "regions": [r.as_dict() for r in self.regions],
            "indices": {str(r.id): r.index for r in self.regions},
            "null_region": 0,
            "signs": [c.handedness.sign for c in self.crossings],
            "handedness": [c.handedness.value for c in self.crossings],
        }


_TOKEN = re.compile(r"X\s*\[\s*([^\]]*)\]", re.IGNORECASE)


def parse_pd(text: str) -> Diagram:
    """Parse PD text, a JSON diagram object, or the token ``unknot``.

    >>> parse_pd("X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]").v
    3
    """
    stripped = text.strip()
    if not stripped:
        raise MalformedNotation("empty diagram text")
    if stripped.lower() == "unknot":
        return Diagram(())
    if stripped.startswith("{"):
        try:
            obj = json.loads(stripped)
            raw = [tuple(int(x) for x in row) for row in obj["crossings"]]
        except (ValueError, KeyError, TypeError) as exc:
            raise MalformedNotation(f"bad JSON diagram: {exc}") from exc
    else:
        raw = []
        pos = 0
        for m in _TOKEN.finditer(stripped):
            gap = stripped[pos:m.start()].strip(" \t\r\n,")
            if gap:
                raise MalformedNotation(f"unexpected text {gap!r}")
            try:
                labels = tuple(int(x) for x in m.group(1).split(","))
            except ValueError as exc:
                raise MalformedNotation(f"non-integer label in {m.group(0)!r}") from exc
            raw.append(labels)
            pos = m.end()
        tail = stripped[pos:].strip(" \t\r\n,")
        if tail:
            raise MalformedNotation(f"unexpected text {tail!r}")
    if any(len(r) != 4 for r in raw):
        raise MalformedNotation("every crossing needs exactly four edge labels")
    if not raw:
        return Diagram(())
    return from_crossings(raw)


def from_crossings(raw) -> Diagram:
    """Validate raw PD tuples, orient them and relabel edges 1..2v."""
    raw = [tuple(r) for r in raw]
    where: dict[int, list[tuple[int, int]]] = {}
    for ci, labels in enumerate(raw):
        for pos, e in enumerate(labels):
            where.setdefault(e, []).append((ci, pos))
    bad = sorted(e for e, occ in where.items() if len(occ) != 2)
    if bad:
        raise InconsistentDiagram(
            f"edge labels used other than twice: {bad}", labels=bad)

    def other(ci, pos):
        a, b = where[raw[ci][pos]]
        return b if a == (ci, pos) else a

    v = len(raw)
    over_out: dict[int, int] = {}
    under_seen: set[int] = set()
    order: list[tuple[int, int]] = [(0, 0)]  # (crossing, position) each edge enters at
    ci, pos = 0, 0
    for _ in range(2 * v):
        if pos == 0:
            if ci in under_seen:
                raise InconsistentDiagram("under-strand traversed twice")
            under_seen.add(ci)
            out = 2
        elif pos == 2:
            raise InconsistentDiagram(
                f"strand enters crossing {ci} against its under-strand direction")
        else:
            out = (pos + 2) % 4
            if over_out.get(ci, out) != out:
                raise InconsistentDiagram(f"over-strand of crossing {ci} used twice")
            over_out[ci] = out
        ci, pos = other(ci, out)
        if (ci, pos) == (0, 0):
            break
        order.append((ci, pos))
    if len(order) != 2 * v or (ci, pos) != (0, 0):
        raise InconsistentDiagram("diagram has more than one component")

    relabel = {raw[c][p]: i + 1 for i, (c, p) in enumerate(order)}
    crossings = tuple(
        Crossing(i, tuple(relabel[e] for e in labels), over_out[i])
        for i, labels in enumerate(raw))
    return Diagram(crossings)


def _check_planar_structure(d: Diagram) -> None:
    n = len(d.regions)
    if n != d.v + 2:
        raise InconsistentDiagram(
            f"face tracing found {n} faces, expected {d.v + 2}")


def _trace_regions(d: Diagram) -> list[Region]:
    if not d.crossings:
        return [Region(0, (), frozenset({1}), 0), Region(1, (), frozenset({1}), 1)]
    by_id = {c.id: c for c in d.crossings}
    if sorted(by_id) != list(range(d.v)):
        raise InconsistentDiagram("crossing ids must be 0..v-1")

    cycles = []
    seen: set[tuple[int, int]] = set()
    for c in d.crossings:
        for quad in range(4):
            if (c.id, quad) in seen:
                continue
            cycle = []
            cur = (c.id, quad)
            while cur not in seen:
                seen.add(cur)
                cycle.append(cur)
                cur = d.other_end(cur[0], (cur[1] + 1) % 4)
            if cur != (c.id, quad):
                raise InconsistentDiagram("corner tracing did not close up")
            cycles.append(tuple(cycle))

    def edges_of(cycle):
        return frozenset(by_id[ci].edges[q] for ci, q in cycle) | frozenset(
            by_id[ci].edges[(q + 1) % 4] for ci, q in cycle)

    # null region: most corners, ties to the smallest bordering edge label
    ranked = sorted(cycles, key=lambda cy: (-len(cy), min(edges_of(cy)), min(cy)))
    null = ranked[0]
    rest = sorted(ranked[1:], key=lambda cy: (min(edges_of(cy)), len(cy), min(cy)))
    ordered = [null] + rest

    corner_to = {corner: i for i, cy in enumerate(ordered) for corner in cy}
    if len(ordered) != d.v + 2:
        # index propagation below assumes planarity; report the count instead
        return [Region(i, _rotate_min(cy), edges_of(cy), 0) for i, cy in enumerate(ordered)]
    index = _propagate_index(d, corner_to, len(ordered))
    return [Region(i, _rotate_min(cy), edges_of(cy), index[i])
            for i, cy in enumerate(ordered)]


def _rotate_min(cycle):
    k = cycle.index(min(cycle))
    return tuple(cycle[k:] + cycle[:k])


def _propagate_index(d: Diagram, corner_to, n_regions) -> list[int]:
    # crossing an edge from its right side to its left side raises the index by one
    adj: list[list[tuple[int, int]]] = [[] for _ in range(n_regions)]
    for c in d.crossings:
        for pos in range(4):
            if c.is_outgoing(pos):
                left = corner_to[(c.id, pos)]
                right = corner_to[(c.id, (pos - 1) % 4)]
                adj[right].append((left, 1))
                adj[left].append((right, -1))
    index: list[int | None] = [None] * n_regions
    index[0] = 0
    queue = deque([0])
    while queue:
        r = queue.popleft()
        for s, step in adj[r]:
            want = index[r] + step
            if index[s] is None:
                index[s] = want
                queue.append(s)
            elif index[s] != want:
                raise InconsistentDiagram("region index assignment is inconsistent")
    if any(i is None for i in index):
        raise InconsistentDiagram("region adjacency graph is disconnected")
    return index


def faces(d: Diagram) -> list[Region]:
    return list(d.regions)


def alexander_indices(d: Diagram) -> dict[int, int]:
    return {r.id: r.index for r in d.regions}


def handedness(c: Crossing | int, d: Diagram) -> Handedness:
    if isinstance(c, int):
        c = d.crossings[c]
    return c.handedness


def mirror(d: Diagram) -> Diagram:
    """Exchange over and under at every crossing; the planar graph is kept."""
    out = []
    for c in d.crossings:
        k = c.over_in
        edges = c.edges[k:] + c.edges[:k]
        under_out = (2 - k) % 4
        out.append(Crossing(c.id, edges, under_out))
    return Diagram(tuple(out), name=d.name)


def relabel_cyclic(d: Diagram, shift: int) -> Diagram:
    """Shift every edge label by ``shift`` (mod 2v); same diagram, new labels."""
    n = d.edge_count
    out = tuple(
        Crossing(c.id, tuple((e - 1 + shift) % n + 1 for e in c.edges), c.over_out)
        for c in d.crossings)
    return Diagram(out, name=d.name)


def add_kink(d: Diagram, edge: int, variant: int = 0) -> Diagram:
    """Insert a Reidemeister-I curl on ``edge``; ``variant`` in 0..3 picks the curl type.

    Variants 0/1 pass under first, 2/3 over first; odd variants loop on the
    other side of the strand.
    """
    a, b, c = "a", "b", "c"
    shapes = {0: (a, c, b, b), 1: (a, b, b, c), 2: (b, a, c, b), 3: (b, b, c, a)}
    if not d.crossings:
        names = {a: 1, b: 2, c: 1}
        return from_crossings([tuple(names[s] for s in shapes[variant])])
    # rename: edge -> a (into the curl), b the loop, c continuing out
    big = 10 * (d.edge_count + 10)
    names = {a: edge, b: big + 1, c: big + 2}
    raw = []
    for cr in d.crossings:
        labels = list(cr.edges)
        # the end of ``edge`` where it enters its next crossing now receives ``c``
        for pos in range(4):
            if labels[pos] == edge and not cr.is_outgoing(pos):
                labels[pos] = names[c]
        raw.append(tuple(labels))
    raw.append(tuple(names[s] for s in shapes[variant]))
    return from_crossings(raw)
