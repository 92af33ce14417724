"""Finite groups given by multiplication tables, and their subgroup lattices.

Elements are the integers ``0..n-1`` with the identity at index 0.  Subgroups
are identified by their sorted element lists and numbered in canonical order
(by cardinality, then lexicographically), so subgroup ids grow with order.
Subsets of the group are also carried around as int bitmasks, which makes
intersection and inclusion tests cheap.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Sequence

MAX_ORDER = 64


class GroupError(ValueError):
    pass


class NotAssociative(GroupError):
    def __init__(self, a, b, c):
        super().__init__(f"table is not associative: ({a}*{b})*{c} != {a}*({b}*{c})")
        self.witness = (a, b, c)


class NoIdentity(GroupError):
    def __init__(self):
        super().__init__("table has no two-sided identity")


class NoInverse(GroupError):
    def __init__(self, a):
        super().__init__(f"element {a} has no two-sided inverse")
        self.witness = a


class UnknownFamily(GroupError):
    pass


class GroupTooLarge(GroupError):
    pass


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    order: int
    mul: tuple[tuple[int, ...], ...]
    identity: int
    inv: tuple[int, ...]
    element_names: tuple[str, ...] | None = None
    name: str | None = None
    # perm[new_index] = index in the table the group was built from
    perm: tuple[int, ...] | None = None

    def __repr__(self):
        return f"FiniteGroup({self.name or 'order ' + str(self.order)})"

    def elname(self, g: int) -> str:
        return self.element_names[g] if self.element_names else str(g)

    @cached_property
    def lattice(self) -> "SubgroupLattice":
        return SubgroupLattice(self)

    def conjugate(self, g: int, x: int) -> int:
        return self.mul[self.mul[g][x]][self.inv[g]]

    def is_abelian(self) -> bool:
        m = self.mul
        return all(m[a][b] == m[b][a] for a in range(self.order) for b in range(a))


def build_group(table: Sequence[Sequence[int]], names: Sequence[str] | None = None,
                name: str | None = None, max_order: int = MAX_ORDER) -> FiniteGroup:
    """Validate a multiplication table and return the group it defines.

    If the identity is not at index 0 the elements are relabelled by the
    transposition swapping it with 0; the permutation is kept on ``perm``.
    """
    n = len(table)
    if n == 0:
        raise GroupError("empty table")
    if n > max_order:
        raise GroupTooLarge(f"group order {n} exceeds the cap {max_order}")
    rows = [tuple(int(x) for x in r) for r in table]
    for r in rows:
        if len(r) != n:
            raise GroupError("table is not square")
        for x in r:
            if not 0 <= x < n:
                raise GroupError(f"entry {x} out of range 0..{n - 1}")
    if names is not None and len(names) != n:
        raise GroupError("wrong number of element names")

    e = next((i for i in range(n)
              if all(rows[i][x] == x and rows[x][i] == x for x in range(n))), None)
    if e is None:
        raise NoIdentity()
    perm = list(range(n))
    perm[0], perm[e] = perm[e], perm[0]
    pos = {old: new for new, old in enumerate(perm)}
    mul = tuple(tuple(pos[rows[perm[a]][perm[b]]] for b in range(n)) for a in range(n))
    if names is not None:
        names = tuple(str(names[perm[i]]) for i in range(n))

    for a in range(n):
        ma = mul[a]
        for b in range(n):
            ab = ma[b]
            mab = mul[ab]
            mb = mul[b]
            for c in range(n):
                if mab[c] != ma[mb[c]]:
                    raise NotAssociative(perm[a], perm[b], perm[c])

    inv = []
    for a in range(n):
        b = next((b for b in range(n) if mul[a][b] == 0 and mul[b][a] == 0), None)
        if b is None:
            raise NoInverse(perm[a])
        inv.append(b)
    return FiniteGroup(n, mul, 0, tuple(inv), names, name,
                       tuple(perm) if e != 0 else None)


# ---------------------------------------------------------------------------
# built-in families


def _cyclic(n):
    table = [[(a + b) % n for b in range(n)] for a in range(n)]
    names = ["e"] + ["a" if k == 1 else f"a^{k}" for k in range(1, n)]
    return table, names


def _dihedral(order):
    # element r^i s^j has index i + n*j
    if order % 2 or order < 2:
        raise UnknownFamily("dihedral groups have even order")
    n = order // 2

    def mul(x, y):
        a, b = x % n, x // n
        c, d = y % n, y // n
        return ((a + (c if b == 0 else -c)) % n) + n * ((b + d) % 2)

    table = [[mul(x, y) for y in range(order)] for x in range(order)]

    def nm(x):
        i, j = x % n, x // n
        r = "" if i == 0 else ("r" if i == 1 else f"r^{i}")
        s = r + ("s" if j else "")
        return s or "e"

    return table, [nm(x) for x in range(order)]


def _symmetric(n):
    perms = list(itertools.permutations(range(n)))
    idx = {p: i for i, p in enumerate(perms)}
    # (p*q)(i) = p(q(i))
    table = [[idx[tuple(p[q[i]] for i in range(n))] for q in perms] for p in perms]

    def cycles(p):
        seen, out = set(), []
        for i in range(n):
            if i in seen or p[i] == i:
                continue
            c, j = [], i
            while j not in seen:
                seen.add(j)
                c.append(str(j + 1))
                j = p[j]
            out.append("(" + "".join(c) + ")")
        return "".join(out) or "e"

    return table, [cycles(p) for p in perms]


def _quaternion():
    # index = 2*unit + (sign < 0), units 1, i, j, k
    units = ["1", "i", "j", "k"]
    # unit products as (sign, unit)
    prod = {
        (0, 0): (1, 0), (0, 1): (1, 1), (0, 2): (1, 2), (0, 3): (1, 3),
        (1, 0): (1, 1), (1, 1): (-1, 0), (1, 2): (1, 3), (1, 3): (-1, 2),
        (2, 0): (1, 2), (2, 1): (-1, 3), (2, 2): (-1, 0), (2, 3): (1, 1),
        (3, 0): (1, 3), (3, 1): (1, 2), (3, 2): (-1, 1), (3, 3): (-1, 0),
    }

    def mul(x, y):
        ux, sx = divmod(x, 2)
        uy, sy = divmod(y, 2)
        s, u = prod[(ux, uy)]
        neg = (s < 0) ^ bool(sx) ^ bool(sy)
        return 2 * u + int(neg)

    table = [[mul(x, y) for y in range(8)] for x in range(8)]
    names = [("-" if x % 2 else "") + units[x // 2] for x in range(8)]
    return table, names


def _klein():
    table = [[a ^ b for b in range(4)] for a in range(4)]
    return table, ["e", "a", "b", "ab"]


FAMILIES = ("cyclic", "dihedral", "klein", "symmetric", "quaternion")


def named_group(name: str, *params: int) -> FiniteGroup:
    """Built-in groups.

    ``cyclic n`` (elements a^k at index k), ``dihedral m`` of order ``m``
    (r^i s^j at index i + (m/2) j), ``klein`` (bit-xor on 0..3),
    ``symmetric 3|4`` (permutations in lexicographic order, composed right
    to left) and ``quaternion`` (+-1, +-i, +-j, +-k).  A single string such
    as ``"cyclic:6"`` is also accepted.
    """
    if ":" in name and not params:
        name, arg = name.split(":", 1)
        params = tuple(int(p) for p in arg.split(",") if p)
    name = name.strip().lower()
    try:
        if name == "cyclic":
            (n,) = params
            if n < 1:
                raise UnknownFamily("cyclic group needs n >= 1")
            table, names = _cyclic(n)
            label = f"C{n}"
        elif name == "dihedral":
            (m,) = params
            table, names = _dihedral(m)
            label = f"D{m // 2}"
        elif name == "klein":
            table, names = _klein()
            label = "V4"
        elif name == "symmetric":
            (n,) = params
            if n not in (1, 2, 3, 4):
                raise UnknownFamily("symmetric groups are built in for n <= 4")
            table, names = _symmetric(n)
            label = f"S{n}"
        elif name == "quaternion":
            table, names = _quaternion()
            label = "Q8"
        else:
            raise UnknownFamily(f"unknown group family {name!r}")
    except (TypeError, ValueError) as exc:
        if isinstance(exc, GroupError):
            raise
        raise UnknownFamily(f"bad parameters {params!r} for {name!r}") from exc
    return build_group(table, names, name=label)


def builtin_groups(max_order: int = 16) -> list[FiniteGroup]:
    """The sweep list: cyclic 2..16, Klein four, S3, D4, Q8 and D6."""
    out = [named_group("cyclic", n) for n in range(2, 17)]
    out += [named_group("klein"), named_group("symmetric", 3), named_group("dihedral", 8),
            named_group("quaternion"), named_group("dihedral", 12)]
    return [g for g in out if g.order <= max_order]


def load_group(source) -> FiniteGroup:
    """A group from a name (``"cyclic:6"``), a JSON file path, or a JSON object."""
    if isinstance(source, FiniteGroup):
        return source
    if isinstance(source, str):
        if source.lstrip().startswith("{"):
            source = json.loads(source)
        elif source.endswith(".json"):
            with open(source) as fh:
                source = json.load(fh)
        else:
            return named_group(source)
    if isinstance(source, dict):
        if "name" in source and "mul" not in source:
            return named_group(source["name"])
        table = source.get("mul")
        if table is None:
            raise GroupError("group object needs 'mul'")
        if "order" in source and source["order"] != len(table):
            raise GroupError("'order' does not match the table size")
        return build_group(table, source.get("names"))
    raise GroupError(f"cannot load a group from {source!r}")


def group_to_json(G: FiniteGroup) -> dict:
    d = {"order": G.order, "mul": [list(r) for r in G.mul]}
    if G.element_names:
        d["names"] = list(G.element_names)
    return d


# ---------------------------------------------------------------------------
# subgroups


def _members(mask: int) -> tuple[int, ...]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


@dataclass(frozen=True)
class Subgroup:
    id: int
    elements: tuple[int, ...]
    mask: int = field(repr=False)

    @property
    def order(self) -> int:
        return len(self.elements)


class SubgroupLattice:
    """All subgroups of a finite group with inclusion, conjugation and normalizers.

    ``conj_action[g][h]`` is the id of g H g^-1.  ``class_reps`` lists the
    least id in each conjugacy class, ``normalizer[h]`` the id of N_G(H).
    """

    def __init__(self, G: FiniteGroup):
        self.group = G
        n = G.order
        mul = G.mul

        def closure(mask):
            elems = list(_members(mask))
            have = mask | 1
            if not have & 1:
                elems.append(0)
            gens = list(elems)
            frontier = list(_members(have))
            while frontier:
                nxt = []
                for x in frontier:
                    row = mul[x]
                    for g in gens:
                        y = row[g]
                        if not (have >> y) & 1:
                            have |= 1 << y
                            nxt.append(y)
                frontier = nxt
            return have

        cyclic = {closure(1 << g) for g in range(n)}
        found = set(cyclic) | {1}
        queue = list(found)
        while queue:
            a = queue.pop()
            for c in cyclic:
                if c & a != c:
                    b = closure(a | c)
                    if b not in found:
                        found.add(b)
                        queue.append(b)
        subs = sorted((_members(m) for m in found), key=lambda e: (len(e), e))
        self.subgroups = [Subgroup(i, e, sum(1 << x for x in e)) for i, e in enumerate(subs)]
        self.by_mask = {s.mask: s.id for s in self.subgroups}
        self.masks = [s.mask for s in self.subgroups]
        self.orders = [s.order for s in self.subgroups]
        self.n = len(self.subgroups)
        self.trivial = 0
        self.top = self.n - 1

        conj = []
        for g in range(n):
            gi = G.inv[g]
            row = []
            for s in self.subgroups:
                m = 0
                for x in s.elements:
                    m |= 1 << mul[mul[g][x]][gi]
                row.append(self.by_mask[m])
            conj.append(tuple(row))
        self.conj_action = tuple(conj)

        self.class_of = [0] * self.n
        self.class_reps = []
        self.classes = []
        for h in range(self.n):
            rep = min(conj[g][h] for g in range(n))
            if rep == h:
                self.class_reps.append(h)
                self.classes.append(sorted({conj[g][h] for g in range(n)}))
        rep_index = {r: i for i, r in enumerate(self.class_reps)}
        for i, members in enumerate(self.classes):
            for h in members:
                self.class_of[h] = i
        self.rep_index = rep_index

        self.normalizer = []
        for h in range(self.n):
            m = 0
            for g in range(n):
                if conj[g][h] == h:
                    m |= 1 << g
            self.normalizer.append(self.by_mask[m])

    def __repr__(self):
        return f"SubgroupLattice({self.group!r}, {self.n} subgroups)"

    def __len__(self):
        return self.n

    def elements(self, h: int) -> tuple[int, ...]:
        return self.subgroups[h].elements

    def order(self, h: int) -> int:
        return self.orders[h]

    def le(self, k: int, h: int) -> bool:
        """K is a subgroup of H."""
        mk = self.masks[k]
        return self.masks[h] & mk == mk

    def meet(self, a: int, b: int) -> int:
        return self.by_mask[self.masks[a] & self.masks[b]]

    def conj(self, g: int, h: int) -> int:
        return self.conj_action[g][h]

    def contains_element(self, h: int, g: int) -> bool:
        return bool((self.masks[h] >> g) & 1)

    def subgroups_of(self, h: int) -> list[int]:
        mh = self.masks[h]
        return [k for k in range(self.n) if mh & self.masks[k] == self.masks[k]]

    def supergroups_of(self, k: int) -> list[int]:
        mk = self.masks[k]
        return [h for h in range(self.n) if self.masks[h] & mk == mk]

    def conjugates(self, h: int, ambient: int | None = None) -> list[int]:
        amb = self.top if ambient is None else ambient
        return sorted({self.conj_action[g][h] for g in self.elements(amb)})

    def class_rep(self, h: int, ambient: int | None = None) -> int:
        """Least id among the conjugates of H under the ambient subgroup."""
        if ambient is None or ambient == self.top:
            return self.class_reps[self.class_of[h]]
        return min(self.conj_action[g][h] for g in self.elements(ambient))

    def normalizer_in(self, h: int, ambient: int | None = None) -> int:
        if ambient is None or ambient == self.top:
            return self.normalizer[h]
        return self.meet(self.normalizer[h], ambient)

    def is_normal(self, h: int, ambient: int | None = None) -> bool:
        return self.normalizer_in(h, ambient) == (self.top if ambient is None else ambient)

    def subconjugate(self, k: int, h: int, ambient: int | None = None) -> bool:
        """Some ambient-conjugate of K lies in H."""
        amb = self.top if ambient is None else ambient
        return any(self.le(self.conj_action[g][k], h) for g in self.elements(amb))

    def left_cosets(self, k: int, ambient: int | None = None) -> list[tuple[int, ...]]:
        """Left cosets gK inside the ambient subgroup, ordered by least element."""
        amb = self.top if ambient is None else ambient
        mul = self.group.mul
        seen = 0
        out = []
        for g in self.elements(amb):
            if (seen >> g) & 1:
                continue
            coset = tuple(sorted(mul[g][x] for x in self.elements(k)))
            for x in coset:
                seen |= 1 << x
            out.append(coset)
        return out

    @cached_property
    def labels(self) -> list[str]:
        G = self.group
        cyc = []
        for s in self.subgroups:
            # cyclic iff some element generates it
            orders = [self._elt_order(x) for x in s.elements]
            cyc.append(max(orders) == s.order)
        base = [f"{'C' if c else 'H'}{o}" for c, o in zip(cyc, self.orders)]
        out = []
        for h, b in enumerate(base):
            same = [k for k in range(self.n) if base[k] == b]
            out.append(b if len(same) == 1 else f"{b}.{same.index(h) + 1}")
        if G.name and base[self.top] != G.name and base.count(base[self.top]) == 1:
            out[self.top] = G.name
        return out

    @cached_property
    def marks(self) -> tuple[tuple[int, ...], ...]:
        """``marks[k][h]`` = |(G/K)^H| for all pairs of subgroup ids."""
        return tuple(tuple(fixed_point_count(self, k, h) for h in range(self.n)) for k in range(self.n))

    def _elt_order(self, x: int) -> int:
        mul = self.group.mul
        k, y = 1, x
        while y != 0:
            y = mul[y][x]
            k += 1
        return k

    def label(self, h: int) -> str:
        return self.labels[h]

    def parse(self, token) -> int:
        """Subgroup id from an int, a numeric string, or a label such as ``C2``."""
        if isinstance(token, int):
            if not 0 <= token < self.n:
                raise GroupError(f"no subgroup with id {token}")
            return token
        t = str(token).strip()
        if t.isdigit():
            return self.parse(int(t))
        if t in self.labels:
            return self.labels.index(t)
        if t == "G":
            return self.top
        if t in ("e", "1", "C1"):
            return self.trivial
        raise GroupError(f"unknown subgroup {token!r}; labels are {self.labels}")


# ---------------------------------------------------------------------------
# counting


def fixed_point_count(lat: SubgroupLattice, k: int, h: int, ambient: int | None = None) -> int:
    """|(A/K)^H| for the ambient subgroup A (default G): cosets aK with H in aKa^-1."""
    amb = lat.top if ambient is None else ambient
    inv = lat.group.inv
    conj = lat.conj_action
    mk = lat.masks[k]
    hits = 0
    for a in lat.elements(amb):
        m = lat.masks[conj[inv[a]][h]]
        if mk & m == m:
            hits += 1
    return hits // lat.orders[k]


def double_cosets(lat: SubgroupLattice, k: int, l: int, ambient: int | None = None) -> list[int]:
    """Least element of each double coset K a L inside the ambient subgroup."""
    amb = lat.top if ambient is None else ambient
    mul = lat.group.mul
    ek, el = lat.elements(k), lat.elements(l)
    seen = 0
    reps = []
    for a in lat.elements(amb):
        if (seen >> a) & 1:
            continue
        reps.append(a)
        for x in ek:
            xa = mul[x][a]
            for y in el:
                seen |= 1 << mul[xa][y]
    return reps


@dataclass
class OrbitSum:
    """A formal combination of orbits level/K, keyed by level-conjugacy class reps."""

    level: int
    coeffs: dict[int, Fraction]

    def cardinality(self, lat: SubgroupLattice) -> Fraction:
        return sum((c * (lat.order(self.level) // lat.order(k)) for k, c in self.coeffs.items()),
                   Fraction(0))


def orbit_product(lat: SubgroupLattice, level: int, k: int, l: int) -> OrbitSum:
    """Decompose level/K x level/L into orbits level/(K n hLh^-1)."""
    out: dict[int, Fraction] = {}
    for h in double_cosets(lat, k, l, level):
        j = lat.class_rep(lat.meet(k, lat.conj(h, l)), level)
        out[j] = out.get(j, Fraction(0)) + 1
    return OrbitSum(level, dict(sorted(out.items())))


def mark_table(lat: SubgroupLattice) -> list[list[int]]:
    """Complete table of marks over class reps: entry [i][j] = |(G/K_j)^{K_i}|."""
    reps = lat.class_reps
    return [[fixed_point_count(lat, kj, ki) for kj in reps] for ki in reps]
