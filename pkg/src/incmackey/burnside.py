"""Rational incomplete Burnside rings, marks, and their primitive idempotents.

An element at level H is a rational combination of orbits H/K, keyed by the
least-id representative of the H-conjugacy class of K.  Only admissible
orbits (K -> H) occur when the element comes from a transfer system.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

from .groups import GroupError, SubgroupLattice, double_cosets, fixed_point_count
from .insep import partition
from .transfer import TransferSystem, admissible_to_top, mobius


class LevelMismatch(GroupError):
    pass


class NotAdmissible(GroupError):
    pass


class NotAdmissibleTransfer(GroupError):
    pass


class SingularMarks(ArithmeticError):
    pass


def fmt_frac(q: Fraction) -> str:
    return str(Fraction(q))


@dataclass(frozen=True)
class BurnsideElement:
    lattice: SubgroupLattice = field(repr=False, compare=False)
    level: int
    coeffs: Mapping[int, Fraction]

    def __post_init__(self):
        clean = {k: Fraction(v) for k, v in sorted(self.coeffs.items()) if v}
        object.__setattr__(self, "coeffs", clean)

    def __hash__(self):
        return hash((self.level, tuple(self.coeffs.items())))

    def __eq__(self, other):
        return (isinstance(other, BurnsideElement) and self.level == other.level
                and self.coeffs == other.coeffs)

    @classmethod
    def zero(cls, lattice, level):
        return cls(lattice, level, {})

    @classmethod
    def one(cls, lattice, level):
        return cls(lattice, level, {level: Fraction(1)})

    @classmethod
    def orbit(cls, lattice, level, k, c=1):
        return cls(lattice, level, {lattice.class_rep(k, level): Fraction(c)})

    def _check(self, other):
        if self.level != other.level:
            raise LevelMismatch(f"levels {self.level} and {other.level} differ")

    def __add__(self, other):
        self._check(other)
        d = dict(self.coeffs)
        for k, v in other.coeffs.items():
            d[k] = d.get(k, 0) + v
        return BurnsideElement(self.lattice, self.level, d)

    def __neg__(self):
        return BurnsideElement(self.lattice, self.level, {k: -v for k, v in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "BurnsideElement":
        c = Fraction(c)
        return BurnsideElement(self.lattice, self.level, {k: c * v for k, v in self.coeffs.items()})

    def __mul__(self, other):
        if isinstance(other, BurnsideElement):
            return multiply(self, other)
        return self.scale(other)

    __rmul__ = scale

    def is_zero(self) -> bool:
        return not self.coeffs

    def format(self) -> str:
        lab = self.lattice.label
        if not self.coeffs:
            return "0"
        parts = []
        for k, c in sorted(self.coeffs.items(), key=lambda kv: -kv[0]):
            orb = f"{lab(self.level)}/{lab(k)}"
            sign = "-" if c < 0 else "+"
            a = abs(c)
            term = orb if a == 1 else f"{a}*{orb}"
            parts.append((sign, term))
        s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, term in parts[1:]:
            s += f" {sign} {term}"
        return s

    def __str__(self):
        return self.format()

    def to_json(self) -> dict:
        return {"level": self.level, "coeffs": {str(k): fmt_frac(v) for k, v in self.coeffs.items()}}

    @classmethod
    def from_json(cls, lattice, d) -> "BurnsideElement":
        level = lattice.parse(d["level"])
        return cls(lattice, level, {lattice.class_rep(lattice.parse(k), level): Fraction(v)
                                    for k, v in d["coeffs"].items()})


# ---------------------------------------------------------------------------
# products


_PRODUCTS: dict[tuple[int, int, int, int], tuple[tuple[int, int], ...]] = {}


def _orbit_product(lat: SubgroupLattice, level: int, k: int, l: int):
    key = (id(lat), level, k, l) if k <= l else (id(lat), level, l, k)
    hit = _PRODUCTS.get(key)
    if hit is None:
        out: dict[int, int] = {}
        for h in double_cosets(lat, k, l, level):
            j = lat.class_rep(lat.meet(k, lat.conj(h, l)), level)
            out[j] = out.get(j, 0) + 1
        hit = _PRODUCTS[key] = tuple(sorted(out.items()))
    return hit


def multiply(a: BurnsideElement, b: BurnsideElement) -> BurnsideElement:
    a._check(b)
    lat = a.lattice
    out: dict[int, Fraction] = {}
    for k, x in a.coeffs.items():
        for l, y in b.coeffs.items():
            xy = x * y
            for j, m in _orbit_product(lat, a.level, k, l):
                out[j] = out.get(j, 0) + xy * m
    return BurnsideElement(lat, a.level, out)


# ---------------------------------------------------------------------------
# admissible bases and marks


def admissible_basis(ts: TransferSystem, level: int | None = None) -> list[int]:
    """Level-conjugacy class reps of the K with K -> level, in increasing id order."""
    lat = ts.lattice
    level = ts.top if level is None else level
    return sorted({lat.class_rep(k, level) for k in ts.sources(level)})


def marks(ts: TransferSystem, x: BurnsideElement) -> dict[int, Fraction]:
    """Fixed-point counts of x at every admissible subgroup of its level."""
    lat = ts.lattice
    out = {}
    for l in ts.sources(x.level):
        out[l] = sum((c * fixed_point_count(lat, k, l, x.level) for k, c in x.coeffs.items()),
                     Fraction(0))
    return out


def indicator(ts: TransferSystem, rep: int, level: int | None = None) -> dict[int, Fraction]:
    """The class function that is 1 on the conjugates of H and 0 elsewhere."""
    lat = ts.lattice
    level = ts.top if level is None else level
    conj = set(lat.conjugates(rep, level))
    return {l: Fraction(int(l in conj)) for l in ts.sources(level)}


# ---------------------------------------------------------------------------
# idempotents


def _require_admissible(ts, h):
    if not ts.rel(h, ts.top):
        raise NotAdmissible(f"{ts.lattice.label(h)} does not transfer to the top")


def idempotent(ts: TransferSystem, h: int) -> BurnsideElement:
    """The primitive idempotent of the class of an admissible H, from the Moebius function."""
    _require_admissible(ts, h)
    lat = ts.lattice
    mu = _mobius(ts)
    nh = lat.order(lat.normalizer_in(h, ts.top))
    out: dict[int, Fraction] = {}
    for k in ts.sources(h):
        c = Fraction(lat.order(k) * mu[(k, h)], nh)
        if c:
            r = lat.class_rep(k, ts.top)
            out[r] = out.get(r, 0) + c
    return BurnsideElement(lat, ts.top, out)


_MU: dict = {}


def _mobius(ts):
    key = (id(ts.lattice), ts.top, ts.up)
    mu = _MU.get(key)
    if mu is None:
        if len(_MU) > 4096:
            _MU.clear()
        mu = _MU[key] = mobius(ts)
    return mu


def idempotent_oracle(ts: TransferSystem, h: int) -> BurnsideElement:
    """Solve marks(x) = indicator of (H) by back-substitution, largest orbits first."""
    _require_admissible(ts, h)
    lat = ts.lattice
    top = ts.top
    basis = admissible_basis(ts)
    target = set(lat.conjugates(h, top))
    x: dict[int, Fraction] = {}
    for l in sorted(basis, key=lambda b: (-lat.order(b), b)):
        rhs = Fraction(int(l in target))
        for k, c in x.items():
            if c:
                rhs -= c * fixed_point_count(lat, k, l, top)
        d = fixed_point_count(lat, l, l, top)
        if d == 0:
            raise SingularMarks(f"zero diagonal mark at {lat.label(l)}")
        x[l] = rhs / d
    return BurnsideElement(lat, top, x)


def idempotents(ts: TransferSystem, oracle: bool = False) -> dict[int, BurnsideElement]:
    """One idempotent per inseparability class, keyed by class label."""
    f = idempotent_oracle if oracle else idempotent
    return {rep: f(ts, rep) for rep in partition(ts).classes}


def classical_idempotents(lattice: SubgroupLattice, top: int | None = None) -> dict[int, BurnsideElement]:
    """Idempotents of the complete rational Burnside ring, by inverting the full table of marks."""
    ts = TransferSystem.complete(lattice, top)
    top = ts.top
    return {r: idempotent_oracle(ts, r) for r in sorted({lattice.class_rep(k, top) for k in ts.members})}


def include_complete(ts: TransferSystem, x: BurnsideElement) -> BurnsideElement:
    """Admissible orbits are orbits, so the inclusion keeps the coefficients."""
    if x.level != ts.top:
        raise LevelMismatch("inclusion is defined at the top level")
    return BurnsideElement(ts.lattice, x.level, dict(x.coeffs))


def classical_decomposition(ts: TransferSystem, x: BurnsideElement) -> dict[int, Fraction]:
    """Coordinates of an idempotent of the complete ring as a 0/1 sum of classical ones."""
    lat = ts.lattice
    m = marks(TransferSystem.complete(lat, ts.top), include_complete(ts, x))
    return {lat.class_rep(k, ts.top): v for k, v in m.items() if v}


# ---------------------------------------------------------------------------
# restriction and transfer


def restrict_element(x: BurnsideElement, l: int) -> BurnsideElement:
    lat = x.lattice
    if not lat.le(l, x.level):
        raise LevelMismatch(f"{lat.label(l)} is not below the level {lat.label(x.level)}")
    out: dict[int, Fraction] = {}
    for k, c in x.coeffs.items():
        for g in double_cosets(lat, l, k, x.level):
            j = lat.class_rep(lat.meet(l, lat.conj(g, k)), l)
            out[j] = out.get(j, 0) + c
    return BurnsideElement(lat, l, out)


def transfer_element(ts: TransferSystem, x: BurnsideElement, target: int | None = None) -> BurnsideElement:
    lat = ts.lattice
    target = ts.top if target is None else target
    if not ts.rel(x.level, target):
        raise NotAdmissibleTransfer(
            f"{lat.label(x.level)} -> {lat.label(target)} is not in the transfer system")
    out: dict[int, Fraction] = {}
    for k, c in x.coeffs.items():
        r = lat.class_rep(k, target)
        out[r] = out.get(r, 0) + c
    return BurnsideElement(lat, target, out)


def idempotent_preimage(ts: TransferSystem, h: int) -> BurnsideElement:
    """An element at level H whose transfer to the top is the idempotent of [H]."""
    _require_admissible(ts, h)
    lat = ts.lattice
    mu = _mobius(ts)
    nh = lat.order(lat.normalizer_in(h, ts.top))
    out: dict[int, Fraction] = {}
    for k in ts.sources(h):
        r = lat.class_rep(k, h)
        out[r] = out.get(r, 0) + Fraction(lat.order(k) * mu[(k, h)], nh)
    return BurnsideElement(lat, h, out)


def orbit_sum_identity_check(ts: TransferSystem, h: int) -> bool:
    """G/H equals the sum over K -> H of |N_G K| / |H| times the idempotent of [K]."""
    _require_admissible(ts, h)
    lat = ts.lattice
    total = BurnsideElement.zero(lat, ts.top)
    for k in ts.sources(h):
        c = Fraction(lat.order(lat.normalizer_in(k, ts.top)), lat.order(h))
        total = total + idempotent(ts, k).scale(c)
    return total == BurnsideElement.orbit(lat, ts.top, h)


def sum_elements(xs: Iterable[BurnsideElement], lattice, level) -> BurnsideElement:
    total = BurnsideElement.zero(lattice, level)
    for x in xs:
        total = total + x
    return total
