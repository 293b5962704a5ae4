"""Bundled knot diagrams with Alexander coefficients recorded from the Fox oracle."""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .alexander import alexander_polynomial
from .diagram import Diagram, add_kink, mirror, parse_pd

CORPUS_FILE = "corpus.json"

# Source diagrams; alternates are derived from these by ``regenerate``.
BASE = {
    "unknot": "unknot",
    "trefoil": "X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]",
    "figure-eight": "X[4,2,5,1] X[8,6,1,5] X[6,3,7,4] X[2,7,3,8]",
    "5_2": "X[1,4,2,5] X[3,8,4,9] X[5,10,6,1] X[9,6,10,7] X[7,2,8,3]",
    "torus(2,5)": "X[1,6,2,7] X[3,8,4,9] X[5,10,6,1] X[7,2,8,3] X[9,4,10,5]",
}
KNOTS = tuple(BASE)


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    knot: str
    pd: str
    expected: tuple[int, ...]

    def diagram(self) -> Diagram:
        d = parse_pd(self.pd)
        return Diagram(d.crossings, name=self.name)


def _alternates(name: str, d: Diagram) -> list[tuple[str, Diagram]]:
    """A kinked copy for every knot, and a mirrored kinked copy."""
    kinked = add_kink(d, 1, variant=len(name) % 4)
    twice = add_kink(mirror(d), 1, variant=(len(name) + 1) % 4)
    return [(f"{name}/kink", kinked), (f"{name}/mirror-kink", twice)]


def regenerate() -> list[dict]:
    rows = []
    for name, pd in BASE.items():
        d = parse_pd(pd)
        for entry_name, diag in [(name, d)] + _alternates(name, d):
            text = diag.pd_string()
            rows.append({
                "name": entry_name,
                "knot": name,
                "pd": text,
                "expected": list(alexander_polynomial(parse_pd(text), method="fox").coeffs),
            })
    return rows


def write_corpus(path: Path | None = None) -> Path:
    path = path or Path(__file__).with_name("data") / CORPUS_FILE
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps({"entries": regenerate()}, indent=1, sort_keys=True) + "\n")
    return path


def load_corpus() -> list[CorpusEntry]:
    text = resources.files("ffk").joinpath("data").joinpath(CORPUS_FILE).read_text()
    return [CorpusEntry(r["name"], r["knot"], r["pd"], tuple(r["expected"]))
            for r in json.loads(text)["entries"]]


def lookup(name: str) -> CorpusEntry | None:
    for e in load_corpus():
        if e.name == name:
            return e
    return None


def primary_entries() -> list[CorpusEntry]:
    return [e for e in load_corpus() if e.name == e.knot]
