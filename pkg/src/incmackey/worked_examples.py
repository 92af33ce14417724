"""Worked examples for C6 and C8, computed from scratch and compared with a golden file.

Each example is a group, a list of generating pairs and a set of extra
quantities to report.  ``run_examples`` returns a plain dict with labels and
canonical rational strings only, so it serializes deterministically.
"""

from __future__ import annotations

import difflib
import json
from dataclasses import dataclass, field
from importlib import resources

from .burnside import classical_decomposition, idempotent, restrict_element
from .groups import named_group
from .insep import above_set, internal_transfers, partition
from .mackey import burnside_mackey, split
from .transfer import (closure_added, enumerate_all, generate, is_disklike, maximal_disklike,
                       parse_pair)

GOLDEN_RESOURCE = "worked_examples.json"


@dataclass(frozen=True)
class Example:
    name: str
    group: str
    pairs: tuple[str, ...]
    extras: tuple[str, ...] = field(default=())


_C6_LIST = [
    (),
    ("C3>C6",),
    ("C2>C6",),
    ("C1>C6",),
    ("C2>C6", "C3>C6"),
    ("C1>C6", "C3>C6"),
    ("C1>C6", "C2>C6"),
]
_C6_NOT_DISKLIKE = [("C1>C2",), ("C1>C3",), ("C1>C2", "C1>C3")]

EXAMPLES: tuple[Example, ...] = (
    Example("c6-burnside", "cyclic:6", ("C2>C6",), ("restrictions", "burnside_split")),
    *(Example(f"c6-disklike-{i}", "cyclic:6", p) for i, p in enumerate(_C6_LIST, 1)),
    *(Example(f"c6-not-disklike-{i}", "cyclic:6", p) for i, p in enumerate(_C6_NOT_DISKLIKE, 1)),
    Example("c6-enumeration", "cyclic:6", (), ("enumeration",)),
    Example("c8-burnside", "cyclic:8", ("C2>C4", "C2>C8"), ("restrictions", "burnside_split")),
    Example("c8-no-split", "cyclic:8", ("C2>C4",), ("burnside_split",)),
    Example("c8-weak-transfers", "cyclic:8", ("C1>C8", "C2>C4"),
            ("internal", "burnside_split", "restrictions")),
    Example("c8-weak-transfers-disklike", "cyclic:8", ("C1>C8",),
            ("internal", "burnside_split")),
)


def _labels(lat, ids):
    return [lat.label(i) for i in ids]


def _pair_labels(lat, pairs):
    return [f"{lat.label(k)}>{lat.label(h)}" for k, h in pairs]


def compute(ex: Example) -> dict:
    G = named_group(ex.group)
    lat = G.lattice
    seeds = [parse_pair(lat, p) for p in ex.pairs]
    ts = generate(lat, seeds)
    part = partition(ts)
    lab = lat.label
    out: dict = {
        "group": lab(lat.top),
        "generators": list(ex.pairs),
        "pairs": _pair_labels(lat, ts.pairs()),
        "added": _pair_labels(lat, closure_added(seeds, ts)),
        "disklike": is_disklike(ts),
        "disklike_core": _pair_labels(lat, maximal_disklike(ts).pairs()),
        "classes": {lab(r): _labels(lat, m) for r, m in part.classes.items()},
        "above": {lab(r): _labels(lat, above_set(ts, r)) for r in part.classes},
    }
    es = {r: idempotent(ts, r) for r in part.classes}
    out["idempotents"] = {lab(r): e.format() for r, e in es.items()}
    out["classical"] = {lab(r): _labels(lat, sorted(classical_decomposition(ts, e)))
                        for r, e in es.items()}
    if "restrictions" in ex.extras:
        out["restrictions"] = {
            lab(r): {lab(l): restrict_element(e, l).format() for l in reversed(ts.members)}
            for r, e in es.items()
        }
    if "burnside_split" in ex.extras:
        M = burnside_mackey(ts)
        S = split(M, ts)
        out["burnside_dims"] = {lab(l): M.dim(l) for l in reversed(ts.members)}
        out["summand_dims"] = {lab(r): {lab(l): s.dim(l) for l in reversed(ts.members)}
                               for r, s in S.summands.items()}
        out["reassembles"] = S.reassembly_ok()
    if "internal" in ex.extras:
        out["internal"] = {lab(r): _pair_labels(lat, internal_transfers(ts, r)) for r in part.classes}
    if "enumeration" in ex.extras:
        systems = enumerate_all(G)
        out["enumeration"] = {"total": len(systems),
                              "disklike": sum(is_disklike(s) for s in systems)}
    return out


def select(only: str | None = None) -> list[Example]:
    if only is None:
        return list(EXAMPLES)
    return [e for e in EXAMPLES if e.name.startswith(only + "-") or e.name == only]


def run_examples(only: str | None = None) -> dict[str, dict]:
    return {ex.name: compute(ex) for ex in select(only)}


def canonical(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def load_golden(path: str | None = None) -> dict:
    if path is None:
        text = resources.files("incmackey").joinpath("data").joinpath(GOLDEN_RESOURCE).read_text()
    else:
        with open(path) as fh:
            text = fh.read()
    return json.loads(text)


def diff(name: str, expected, actual) -> str:
    a = canonical(expected).splitlines(keepends=True)
    b = canonical(actual).splitlines(keepends=True)
    return "".join(difflib.unified_diff(a, b, f"golden/{name}", f"computed/{name}"))
