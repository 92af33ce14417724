"""Transfer systems on the subgroup lattice of a finite group.

A transfer system is stored as the full reflexive-transitive relation.  Row
``up[K]`` is a bitmask over subgroup ids with bit H set when K -> H.  A system
for a subgroup H of G (as produced by restriction) keeps the ids of G's
lattice and simply has ``top = H``; subgroups outside H carry no relations.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable

from .groups import FiniteGroup, GroupError, GroupTooLarge, SubgroupLattice, load_group


class PairNotNested(GroupError):
    def __init__(self, k, h):
        super().__init__(f"seed pair ({k}, {h}) is not nested")
        self.witness = (k, h)


ENUMERATION_CAP = 16


@dataclass(frozen=True)
class Violation:
    kind: str
    witness: tuple

    def __str__(self):
        return f"{self.kind}: {self.witness}"


def _bits(mask: int) -> list[int]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


class TransferSystem:
    __slots__ = ("lattice", "top", "up", "__dict__")

    def __init__(self, lattice: SubgroupLattice, up: Iterable[int], top: int | None = None):
        self.lattice = lattice
        self.top = lattice.top if top is None else top
        self.up = tuple(up)
        if len(self.up) != lattice.n:
            raise ValueError("relation table has the wrong size")

    @classmethod
    def from_pairs(cls, lattice, pairs, top=None, reflexive=True) -> "TransferSystem":
        """The raw relation on the given pairs, without any closure."""
        top = lattice.top if top is None else top
        up = [0] * lattice.n
        if reflexive:
            for k in lattice.subgroups_of(top):
                up[k] |= 1 << k
        for k, h in pairs:
            up[k] |= 1 << h
        return cls(lattice, up, top)

    @classmethod
    def trivial(cls, lattice, top=None):
        return cls.from_pairs(lattice, (), top)

    @classmethod
    def complete(cls, lattice, top=None):
        top = lattice.top if top is None else top
        subs = lattice.subgroups_of(top)
        return cls.from_pairs(lattice, [(k, h) for h in subs for k in subs if lattice.le(k, h)], top)

    @property
    def group(self) -> FiniteGroup:
        return self.lattice.group

    def __eq__(self, other):
        return (isinstance(other, TransferSystem) and self.lattice is other.lattice
                and self.top == other.top and self.up == other.up)

    def __hash__(self):
        return hash((self.top, self.up))

    def __le__(self, other: "TransferSystem") -> bool:
        return all(a & b == a for a, b in zip(self.up, other.up))

    def rel(self, k: int, h: int) -> bool:
        return bool((self.up[k] >> h) & 1)

    @cached_property
    def down(self) -> tuple[int, ...]:
        d = [0] * self.lattice.n
        for k, m in enumerate(self.up):
            for h in _bits(m):
                d[h] |= 1 << k
        return tuple(d)

    def targets(self, k: int) -> list[int]:
        return _bits(self.up[k])

    def sources(self, h: int) -> list[int]:
        """All K with K -> H, in increasing id order."""
        return _bits(self.down[h])

    @cached_property
    def members(self) -> list[int]:
        return self.lattice.subgroups_of(self.top)

    def pairs(self) -> list[tuple[int, int]]:
        """Non-reflexive pairs (K, H), sorted."""
        return [(k, h) for k in range(self.lattice.n) for h in _bits(self.up[k]) if h != k]

    def sort_key(self):
        p = self.pairs()
        return (len(p), p)

    def label_pairs(self) -> list[str]:
        lab = self.lattice.label
        return [f"{lab(k)}->{lab(h)}" for k, h in self.pairs()]

    def __repr__(self):
        return f"TransferSystem({{{', '.join(self.label_pairs())}}})"

    def restrict(self, h: int) -> "TransferSystem":
        return restrict_to_subgroup(self, h)

    def is_complete(self) -> bool:
        return self == TransferSystem.complete(self.lattice, self.top)

    def is_trivial(self) -> bool:
        return not self.pairs()


def validate(ts: TransferSystem) -> list[Violation]:
    """All axiom failures, each with a witness.  An empty list means valid."""
    lat = ts.lattice
    out: list[Violation] = []
    subs = ts.members
    inside = set(subs)
    for k in range(lat.n):
        for h in ts.targets(k):
            if k not in inside or h not in inside:
                out.append(Violation("outside-ambient", (k, h)))
    for k in subs:
        if not ts.rel(k, k):
            out.append(Violation("reflexivity", (k,)))
    pairs = ts.pairs()
    for k, h in pairs:
        if not lat.le(k, h):
            out.append(Violation("not-nested", (k, h)))
        if ts.rel(h, k):
            out.append(Violation("antisymmetry", (k, h)))
    for k, j in pairs:
        for h in ts.targets(j):
            if h != j and not ts.rel(k, h):
                out.append(Violation("transitivity", (k, j, h)))
    amb = lat.elements(ts.top)
    for k, h in pairs:
        for g in amb:
            gk, gh = lat.conj(g, k), lat.conj(g, h)
            if not ts.rel(gk, gh):
                out.append(Violation("conjugation", (k, h, g)))
                break
    for k, h in pairs:
        if not lat.le(k, h):
            continue
        for l in lat.subgroups_of(h):
            m = lat.meet(k, l)
            if not ts.rel(m, l):
                out.append(Violation("restriction", (k, h, l)))
    return out


def is_valid(ts: TransferSystem) -> bool:
    return not validate(ts)


def _close(lat: SubgroupLattice, top: int, up: list[int], work: list[tuple[int, int]]) -> None:
    """Close ``up`` in place, given that it was closed before ``work`` was added."""
    amb = lat.elements(top)
    conj = lat.conj_action
    subs_of = {}
    down = [0] * lat.n
    for k, m in enumerate(up):
        for h in _bits(m):
            down[h] |= 1 << k

    def add(k, h):
        if not (up[k] >> h) & 1:
            up[k] |= 1 << h
            down[h] |= 1 << k
            work.append((k, h))

    pending = list(work)
    work.clear()
    for k, h in pending:
        up[k] |= 1 << h
        down[h] |= 1 << k
    work.extend(pending)
    while work:
        k, h = work.pop()
        for g in amb:
            add(conj[g][k], conj[g][h])
        if h not in subs_of:
            subs_of[h] = lat.subgroups_of(h)
        for l in subs_of[h]:
            add(lat.meet(k, l), l)
        for j in _bits(down[k]):
            add(j, h)
        for m in _bits(up[h]):
            add(k, m)


def generate(lattice: SubgroupLattice, seeds: Iterable[tuple[int, int]], top: int | None = None,
             base: TransferSystem | None = None) -> TransferSystem:
    """Least transfer system containing the seeds (and ``base``, if given)."""
    top = lattice.top if top is None else top
    seeds = list(seeds)
    for k, h in seeds:
        if not lattice.le(k, h):
            raise PairNotNested(k, h)
        if not lattice.le(h, top):
            raise PairNotNested(h, top)
    if base is None:
        base = TransferSystem.trivial(lattice, top)
    elif base.top != top:
        raise ValueError("base system lives on a different ambient subgroup")
    up = list(base.up)
    work = [(k, h) for k, h in seeds if not (up[k] >> h) & 1]
    _close(lattice, top, up, work)
    return TransferSystem(lattice, up, top)


def closure_added(ts_seeds: Iterable[tuple[int, int]], ts: TransferSystem) -> list[tuple[int, int]]:
    """Pairs in ``ts`` that were not among the seeds."""
    seeds = set(ts_seeds)
    return [p for p in ts.pairs() if p not in seeds]


def restrict_to_subgroup(ts: TransferSystem, h: int) -> TransferSystem:
    lat = ts.lattice
    if not lat.le(h, ts.top):
        raise ValueError("can only restrict to a subgroup of the ambient group")
    inside = 0
    for k in lat.subgroups_of(h):
        inside |= 1 << k
    up = [(m & inside) if (inside >> k) & 1 else 0 for k, m in enumerate(ts.up)]
    return TransferSystem(lat, up, h)


def pair_orbits(lattice: SubgroupLattice, top: int | None = None) -> list[list[tuple[int, int]]]:
    """Conjugation orbits of non-reflexive nested pairs inside ``top``."""
    top = lattice.top if top is None else top
    amb = lattice.elements(top)
    seen = set()
    out = []
    subs = lattice.subgroups_of(top)
    for h in subs:
        for k in subs:
            if k != h and lattice.le(k, h) and (k, h) not in seen:
                orb = sorted({(lattice.conj(g, k), lattice.conj(g, h)) for g in amb})
                seen.update(orb)
                out.append(orb)
    return out


def enumerate_all(G_or_lattice, top: int | None = None, max_order: int = ENUMERATION_CAP
                  ) -> list[TransferSystem]:
    """Every transfer system, ordered by (number of pairs, sorted pair list).

    Depth-first search: from each system found, add one conjugation orbit of
    pairs not yet present and close.  Every system is reached because adding
    its missing orbits one at a time passes through closed systems only.
    """
    lat = G_or_lattice.lattice if isinstance(G_or_lattice, FiniteGroup) else G_or_lattice
    top = lat.top if top is None else top
    if lat.order(top) > max_order:
        raise GroupTooLarge(f"enumeration is capped at order {max_order}")
    orbits = pair_orbits(lat, top)
    start = TransferSystem.trivial(lat, top)
    found = {start.up: start}
    stack = [start]
    while stack:
        s = stack.pop()
        for orb in orbits:
            k, h = orb[0]
            if s.rel(k, h):
                continue
            t = generate(lat, [(k, h)], top, base=s)
            if t.up not in found:
                found[t.up] = t
                stack.append(t)
    return sorted(found.values(), key=TransferSystem.sort_key)


def disk_seeds(ts: TransferSystem) -> list[tuple[int, int]]:
    return [(k, ts.top) for k in ts.sources(ts.top) if k != ts.top]


def maximal_disklike(ts: TransferSystem) -> TransferSystem:
    return generate(ts.lattice, disk_seeds(ts), ts.top)


def is_disklike(ts: TransferSystem) -> bool:
    return maximal_disklike(ts) == ts


def mobius(ts: TransferSystem) -> dict[tuple[int, int], int]:
    """mu(K, H) for every K -> H, by the recursion down from the diagonal."""
    mu: dict[tuple[int, int], int] = {}
    for k in ts.members:
        tk = ts.targets(k)
        for h in tk:  # ids increase with order, so intermediates come first
            if h == k:
                mu[(k, h)] = 1
                continue
            s = 0
            for j in tk:
                if j != h and ts.rel(j, h):
                    s += mu[(k, j)]
            mu[(k, h)] = -s
    return mu


def admissible_to_top(ts: TransferSystem) -> list[int]:
    return ts.sources(ts.top)


def minimal_admissible(ts: TransferSystem) -> int:
    """The least admissible subgroup: the meet of everything that transfers to the top."""
    lat = ts.lattice
    m = lat.masks[ts.top]
    for h in admissible_to_top(ts):
        m &= lat.masks[h]
    return lat.by_mask[m]


# ---------------------------------------------------------------------------
# serialization


def parse_pair(lattice: SubgroupLattice, item) -> tuple[int, int]:
    if isinstance(item, str):
        if ">" not in item:
            raise GroupError(f"pair {item!r} should look like 'K>H'")
        a, b = item.split(">", 1)
        return lattice.parse(a), lattice.parse(b)
    a, b = item
    return lattice.parse(a), lattice.parse(b)


def load_system(source, group: FiniteGroup | None = None) -> tuple[TransferSystem, list[tuple[int, int]]]:
    """Load ``{"group": ..., "pairs": [...]}``; returns the closed system and the pairs closure added."""
    if isinstance(source, str):
        with open(source) as fh:
            source = json.load(fh)
    if group is None:
        if "group" not in source:
            raise GroupError("transfer system file needs a 'group'")
        group = load_group(source["group"])
    lat = group.lattice
    seeds = [parse_pair(lat, p) for p in source.get("pairs", [])]
    seeds = [p for p in seeds if p[0] != p[1]]
    ts = generate(lat, seeds)
    return ts, closure_added(seeds, ts)


def system_to_json(ts: TransferSystem, group_ref=None) -> dict:
    d = {}
    if group_ref is not None:
        d["group"] = group_ref
    d["pairs"] = [[k, h] for k, h in ts.pairs()]
    return d


def system_to_dot(ts: TransferSystem, title: str | None = None) -> str:
    """Subgroup lattice covers as grey edges, non-reflexive transfers as bold arrows."""
    lat = ts.lattice
    lab = lat.label
    subs = ts.members
    lines = [f'digraph "{title or "transfer system"}" {{', "  rankdir=BT;", "  node [shape=plaintext];"]
    for h in sorted(subs, key=lambda x: (-lat.order(x), x)):
        lines.append(f'  n{h} [label="{lab(h)}"];')
    for h in subs:
        below = [k for k in lat.subgroups_of(h) if k != h]
        for k in below:
            if not any(j != k and lat.le(k, j) for j in below):
                lines.append(f"  n{k} -> n{h} [color=gray, arrowhead=none];")
    for k, h in ts.pairs():
        lines.append(f"  n{k} -> n{h} [penwidth=2];")
    lines.append("}")
    return "\n".join(lines) + "\n"
