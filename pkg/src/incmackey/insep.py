"""Hulls, inseparability classes and the sets of maximal class members below a level.

Classes are labelled by the least-id conjugate (under the ambient group of
the transfer system) of the admissible subgroup they are built around.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .groups import GroupError, double_cosets, fixed_point_count
from .transfer import TransferSystem, admissible_to_top


class NotAbove(GroupError):
    pass


class NotAClass(GroupError):
    pass


@dataclass(frozen=True)
class Partition:
    ts: TransferSystem
    hull: dict[int, int]
    label: dict[int, int]  # subgroup -> class label
    classes: dict[int, tuple[int, ...]]  # label -> members

    def members(self, rep: int) -> tuple[int, ...]:
        try:
            return self.classes[rep]
        except KeyError:
            raise NotAClass(f"{rep} does not label an inseparability class") from None

    def same_class(self, j: int, k: int) -> bool:
        return self.label[j] == self.label[k]

    def as_sets(self) -> set[frozenset[int]]:
        return {frozenset(m) for m in self.classes.values()}

    def to_json(self) -> dict:
        return {
            "classes": [{"rep": r, "members": list(m)} for r, m in sorted(self.classes.items())],
            "hull": {str(j): h for j, h in sorted(self.hull.items())},
        }


def hull(ts: TransferSystem, j: int) -> int:
    """Intersection of all admissible subgroups containing J."""
    lat = ts.lattice
    mj = lat.masks[j]
    m = lat.masks[ts.top]
    for h in admissible_to_top(ts):
        mh = lat.masks[h]
        if mh & mj == mj:
            m &= mh
    return lat.by_mask[m]


def partition(ts: TransferSystem) -> Partition:
    return _partition_cached(ts)


@lru_cache(maxsize=4096)
def _partition_cached(ts: TransferSystem) -> Partition:
    lat = ts.lattice
    hulls = {j: hull(ts, j) for j in ts.members}
    label = {j: lat.class_rep(h, ts.top) for j, h in hulls.items()}
    classes: dict[int, list[int]] = {}
    for j in ts.members:
        classes.setdefault(label[j], []).append(j)
    return Partition(ts, hulls, label, {r: tuple(m) for r, m in sorted(classes.items())})


def mark_partition(ts: TransferSystem) -> set[frozenset[int]]:
    """Classes of subgroups with equal fixed-point counts on every admissible orbit."""
    lat = ts.lattice
    adm = admissible_to_top(ts)
    if ts.top == lat.top:
        marks = lat.marks
        vec = {j: tuple(marks[l][j] for l in adm) for j in ts.members}
    else:
        vec = {j: tuple(fixed_point_count(lat, l, j, ts.top) for l in adm) for j in ts.members}
    groups: dict[tuple, set[int]] = {}
    for j, v in vec.items():
        groups.setdefault(v, set()).add(j)
    return {frozenset(s) for s in groups.values()}


def class_reps(ts: TransferSystem) -> list[int]:
    return list(partition(ts).classes)


def is_above(ts: TransferSystem, l: int, rep: int) -> bool:
    lat = ts.lattice
    return any(lat.le(k, l) for k in partition(ts).members(rep))


def above_set(ts: TransferSystem, rep: int) -> list[int]:
    return [l for l in ts.members if is_above(ts, l, rep)]


@dataclass(frozen=True)
class TopSet:
    level: int
    rep: int
    members: tuple[int, ...]
    hull_of: dict[int, int]  # member P -> the conjugate gHg^-1 with P = L n gHg^-1
    orbits: tuple[tuple[int, ...], ...]  # L-conjugation orbits, each sorted, ordered by least member

    @property
    def orbit_reps(self) -> tuple[int, ...]:
        return tuple(o[0] for o in self.orbits)


def top_set(ts: TransferSystem, l: int, rep: int) -> TopSet:
    """All L n gHg^-1 lying in the class of H, grouped into L-orbits.

    Scans one g per double coset L g N_G(H) and closes up under L-conjugation.
    """
    lat = ts.lattice
    part = partition(ts)
    cls = set(part.members(rep))
    if not any(lat.le(k, l) for k in cls):
        raise NotAbove(f"{lat.label(l)} is not above the class of {lat.label(rep)}")
    n = lat.normalizer_in(rep, ts.top)
    found: dict[int, int] = {}
    orbits = []
    for g in double_cosets(lat, l, n, ts.top):
        gh = lat.conj(g, rep)
        p = lat.meet(l, gh)
        if p not in cls:
            continue
        orbit = set()
        for x in lat.elements(l):
            q = lat.conj(x, p)
            orbit.add(q)
            found[q] = lat.conj(x, gh)
        orbits.append(tuple(sorted(orbit)))
    orbits.sort()
    return TopSet(l, rep, tuple(sorted(found)), dict(sorted(found.items())), tuple(orbits))


def top_set_full_scan(ts: TransferSystem, l: int, rep: int) -> set[int]:
    lat = ts.lattice
    cls = set(partition(ts).members(rep))
    out = set()
    for g in lat.elements(ts.top):
        p = lat.meet(l, lat.conj(g, rep))
        if p in cls:
            out.add(p)
    return out


def sub_hull_component(ts: TransferSystem, rep: int) -> list[int]:
    """Subgroups of H whose hull is exactly H."""
    part = partition(ts)
    return [k for k in part.members(rep) if part.hull[k] == rep]


def tombstone_check(ts: TransferSystem, rep: int) -> bool:
    """The class is G x_N {K <= H : hull(K) = H} via (g, K) -> gKg^-1, N = N_G(H)."""
    lat = ts.lattice
    part = partition(ts)
    if part.hull.get(rep) != rep:
        return False
    cls = set(part.members(rep))
    comp = sub_hull_component(ts, rep)
    n = lat.normalizer_in(rep, ts.top)
    # N must preserve the component, so the balanced product is well defined
    for x in lat.elements(n):
        if any(lat.conj(x, k) not in comp for k in comp):
            return False
    cosets = lat.left_cosets(n, ts.top)
    image = [lat.conj(c[0], k) for c in cosets for k in comp]
    return len(set(image)) == len(image) and set(image) == cls


def is_relative_family(ts: TransferSystem, rep: int) -> bool:
    """J <= K <= M with J, M in the class forces K into the class."""
    lat = ts.lattice
    members = partition(ts).members(rep)
    cls = set(members)
    for j in members:
        for m in members:
            if j != m and lat.le(j, m):
                for k in lat.subgroups_of(m):
                    if lat.le(j, k) and k not in cls:
                        return False
    return True


def internal_transfers(ts: TransferSystem, rep: int) -> list[tuple[int, int]]:
    members = partition(ts).members(rep)
    return [(j, k) for j in members for k in members if j != k and ts.rel(j, k)]
