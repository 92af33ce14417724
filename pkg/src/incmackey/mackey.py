"""Rational Mackey functors for a transfer system, stored as Lewis diagrams.

``res[(L, K)]`` maps M(G/L) -> M(G/K) for K <= L, ``tr[(K, L)]`` maps
M(G/K) -> M(G/L) for K -> L, and ``conj[(g, L)]`` maps M(G/L) -> M(G/gLg^-1).
Vectors are columns, so a map V -> W is a ``dim W x dim V`` matrix.

A functor may live on a family of subgroups (closed under subgroups and
conjugation) instead of all of them; ``levels`` lists the family.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .burnside import BurnsideElement, admissible_basis, idempotent, restrict_element
from .groups import GroupError, double_cosets, load_group
from .insep import partition
from .linalg import Mat, block_diag, hstack, image, nullspace, rref, solve
from .spans import span_category
from .transfer import TransferSystem, Violation, generate, parse_pair


class DimensionMismatch(GroupError):
    pass


class MissingMap(GroupError):
    pass


class InadmissibleAction(GroupError):
    def __init__(self, orbit, level):
        super().__init__(f"orbit {orbit} needs a transfer that is missing at level {level}")
        self.orbit = orbit
        self.level = level


class MackeyFunctor:
    def __init__(self, ts: TransferSystem, dims: Mapping[int, int], res=None, tr=None, conj=None,
                 levels=None, name: str | None = None):
        self.ts = ts
        lat = self.lattice = ts.lattice
        self.levels = tuple(sorted(ts.members if levels is None else levels))
        lv = set(self.levels)
        self.name = name
        self.dims = {l: int(dims.get(l, 0)) for l in self.levels}
        for l in dims:
            if l not in lv and dims[l]:
                raise DimensionMismatch(f"dimension given for {lat.label(l)} outside the levels")
        res, tr, conj = dict(res or {}), dict(tr or {}), dict(conj or {})

        self.res = {}
        for l in self.levels:
            for k in lat.subgroups_of(l):
                self.res[(l, k)] = self._fetch(res, (l, k), k, l, "res", identity=k == l)
        self._fill_composites(self.res, lambda l, k: [(l, j, k) for j in lat.subgroups_of(l)
                                                      if lat.le(k, j) and j not in (k, l)], "res")
        self.tr = {}
        for l in self.levels:
            for k in ts.sources(l):
                self.tr[(k, l)] = self._fetch(tr, (k, l), l, k, "tr", identity=k == l)
        self._fill_composites(self.tr, lambda k, l: [(k, j, l) for j in ts.targets(k)
                                                     if ts.rel(j, l) and j not in (k, l)], "tr")
        for given, table, kind in ((res, self.res, "res"), (tr, self.tr, "tr")):
            for key in given:
                if key not in table:
                    raise DimensionMismatch(f"{kind} given for a pair that is not allowed: {key}")
        self.conj = self._extend_conj(conj)

    # -- construction helpers

    def _fetch(self, given, key, tgt, src, kind, identity=False):
        m = given.get(key)
        rows, cols = self.dims[tgt], self.dims[src]
        if m is None:
            if rows == 0 or cols == 0:
                return Mat.zeros(rows, cols)
            if identity:
                return Mat.identity(rows)
            return None
        if not isinstance(m, Mat):
            m = Mat(m, cols)
        if m.shape != (rows, cols):
            raise DimensionMismatch(f"{kind} {key} has shape {m.shape}, expected {(rows, cols)}")
        return m

    def _fill_composites(self, table, routes, kind):
        missing = [k for k, v in table.items() if v is None]
        while missing:
            progress = False
            for a, b in missing:
                for x, j, y in routes(a, b):
                    first, second = table.get((x, j)), table.get((j, y))
                    if first is not None and second is not None:
                        table[(a, b)] = second @ first
                        progress = True
                        break
            missing = [k for k, v in table.items() if v is None]
            if missing and not progress:
                raise MissingMap(f"{kind} map {missing[0]} is neither given nor a composite")

    def _extend_conj(self, given):
        """Fill in conj(g, L) for every g in the ambient group from the given maps by composition."""
        lat = self.lattice
        G = lat.group
        elems = lat.elements(self.ts.top)
        out = {}
        for (g, l), m in given.items():
            if l not in self.dims or not lat.contains_element(self.ts.top, g):
                raise DimensionMismatch(f"conj given at ({g}, {l}) outside the levels")
            gl = lat.conj(g, l)
            if not isinstance(m, Mat):
                m = Mat(m, self.dims[l])
            if m.shape != (self.dims[gl], self.dims[l]):
                raise DimensionMismatch(f"conj {(g, l)} has shape {m.shape}")
            out[(g, l)] = m
        for l in self.levels:
            out.setdefault((0, l), Mat.identity(self.dims[l]))
            for g in elems:
                gl = lat.conj(g, l)
                if self.dims[l] == 0 or self.dims[gl] == 0:
                    out.setdefault((g, l), Mat.zeros(self.dims[gl], self.dims[l]))
        full = {g for g in elems if all((g, l) in out for l in self.levels)}
        gens = sorted(full)
        frontier = sorted(full)
        while frontier:
            nxt = []
            for h in frontier:
                for g in gens:
                    gh = G.mul[g][h]
                    if gh in full:
                        continue
                    for l in self.levels:
                        if (gh, l) not in out:
                            out[(gh, l)] = out[(g, lat.conj(h, l))] @ out[(h, l)]
                    full.add(gh)
                    nxt.append(gh)
            frontier = nxt
        if len(full) != len(elems):
            raise MissingMap("conjugation maps do not generate the whole group")
        return out

    @property
    def acting(self) -> tuple[int, ...]:
        """Elements acting by conjugation: the ambient group of the transfer system."""
        return self.lattice.elements(self.ts.top)

    # -- accessors

    @property
    def group(self):
        return self.lattice.group

    def dim(self, l: int) -> int:
        return self.dims.get(l, 0)

    def total_dim(self) -> int:
        return sum(self.dims.values())

    def res_map(self, l: int, k: int) -> Mat:
        return self.res[(l, k)]

    def tr_map(self, k: int, l: int) -> Mat:
        return self.tr[(k, l)]

    def conj_map(self, g: int, l: int) -> Mat:
        return self.conj[(g, l)]

    def has_tr(self, k: int, l: int) -> bool:
        return (k, l) in self.tr

    def is_zero(self) -> bool:
        return not any(self.dims.values())

    def __repr__(self):
        lab = self.lattice.label
        body = ", ".join(f"{lab(l)}:{d}" for l, d in sorted(self.dims.items(), key=lambda x: -x[0]))
        return f"MackeyFunctor({self.name + ': ' if self.name else ''}{body})"

    def span_action(self, k: int, l: int, span) -> Mat:
        """The map M(G/K) -> M(G/L) of a basis span (U, y): tr_U^L . res_U . conj(a, K)."""
        u, y = span
        cat = span_category(self.ts)
        a = cat.cos.reps(k)[y]
        ak = self.lattice.conj(a, k)
        return self.tr_map(u, l) @ self.res_map(ak, u) @ self.conj_map(a, k)


# ---------------------------------------------------------------------------
# validation


def _check_shapes(M: MackeyFunctor):
    lat = M.lattice
    for (l, k), m in M.res.items():
        if m.shape != (M.dim(k), M.dim(l)):
            raise DimensionMismatch(f"res {lat.label(l)}>{lat.label(k)}")
    for (k, l), m in M.tr.items():
        if m.shape != (M.dim(l), M.dim(k)):
            raise DimensionMismatch(f"tr {lat.label(k)}>{lat.label(l)}")
    for (g, l), m in M.conj.items():
        if m.shape != (M.dim(lat.conj(g, l)), M.dim(l)):
            raise DimensionMismatch(f"conj {g},{lat.label(l)}")


def double_coset_sum(M: MackeyFunctor, l: int, j: int, k: int) -> Mat:
    """Sum over x in K\\L/J of tr^K_{K n xJx^-1} c_x res^J_{x^-1Kx n J}: M(G/J) -> M(G/K)."""
    lat = M.lattice
    inv = lat.group.inv
    total = Mat.zeros(M.dim(k), M.dim(j))
    for x in double_cosets(lat, k, j, l):
        upper = lat.meet(k, lat.conj(x, j))
        lower = lat.meet(lat.conj(inv[x], k), j)
        total = total + M.tr_map(upper, k) @ M.conj_map(x, lower) @ M.res_map(j, lower)
    return total


def validate_mackey(M: MackeyFunctor) -> list[Violation]:
    """Every failing axiom instance, with the subgroups (and element) that witness it."""
    _check_shapes(M)
    lat = M.lattice
    G = lat.group
    ts = M.ts
    out: list[Violation] = []
    lv = M.levels
    for l in lv:
        if not M.res_map(l, l).is_identity():
            out.append(Violation("res-identity", (l,)))
        if not M.tr_map(l, l).is_identity():
            out.append(Violation("tr-identity", (l,)))
        for k in lat.subgroups_of(l):
            for j in lat.subgroups_of(k):
                if M.res_map(k, j) @ M.res_map(l, k) != M.res_map(l, j):
                    out.append(Violation("res-composition", (l, k, j)))
        for k in ts.sources(l):
            for j in ts.sources(k):
                if M.tr_map(k, l) @ M.tr_map(j, k) != M.tr_map(j, l):
                    out.append(Violation("tr-composition", (j, k, l)))
    elems = M.acting
    for l in lv:
        for g in lat.elements(l):
            if not M.conj_map(g, l).is_identity():
                out.append(Violation("conj-inner", (g, l)))
        for g in elems:
            gl = lat.conj(g, l)
            for h in elems:
                if M.conj_map(h, gl) @ M.conj_map(g, l) != M.conj_map(G.mul[h][g], l):
                    out.append(Violation("conj-action", (h, g, l)))
            for k in lat.subgroups_of(l):
                gk = lat.conj(g, k)
                if M.conj_map(g, k) @ M.res_map(l, k) != M.res_map(gl, gk) @ M.conj_map(g, l):
                    out.append(Violation("conj-res", (g, l, k)))
            for k in ts.sources(l):
                gk = lat.conj(g, k)
                if M.conj_map(g, l) @ M.tr_map(k, l) != M.tr_map(gk, gl) @ M.conj_map(g, k):
                    out.append(Violation("conj-tr", (g, k, l)))
    for l in lv:
        for j in ts.sources(l):
            if j == l:
                continue
            for k in lat.subgroups_of(l):
                if M.res_map(l, k) @ M.tr_map(j, l) != double_coset_sum(M, l, j, k):
                    out.append(Violation("double-coset", (l, j, k)))
    return out


def is_valid_mackey(M: MackeyFunctor) -> bool:
    return not validate_mackey(M)


# ---------------------------------------------------------------------------
# constructions


def zero_mackey(ts: TransferSystem, levels=None) -> MackeyFunctor:
    return MackeyFunctor(ts, {}, levels=levels, name="zero")


def burnside_mackey(ts: TransferSystem) -> MackeyFunctor:
    """Admissible orbits at each level; restriction by double cosets, transfer by induction."""
    lat = ts.lattice
    basis = {l: admissible_basis(ts, l) for l in ts.members}
    pos = {l: {b: i for i, b in enumerate(bs)} for l, bs in basis.items()}
    dims = {l: len(b) for l, b in basis.items()}

    def column_map(src, tgt, f):
        cols = []
        for j in basis[src]:
            v = [Fraction(0)] * dims[tgt]
            for key, c in f(j).items():
                v[pos[tgt][key]] += c
            cols.append(v)
        return Mat.from_columns(cols, dims[tgt])

    res, tr, conj = {}, {}, {}
    for l in ts.members:
        for k in lat.subgroups_of(l):
            res[(l, k)] = column_map(
                l, k, lambda j, l=l, k=k: restrict_element(BurnsideElement.orbit(lat, l, j), k).coeffs)
        for k in ts.sources(l):
            tr[(k, l)] = column_map(k, l, lambda j, l=l: {lat.class_rep(j, l): 1})
        for g in range(lat.group.order):
            gl = lat.conj(g, l)
            conj[(g, l)] = column_map(l, gl, lambda j, g=g, gl=gl: {lat.class_rep(lat.conj(g, j), gl): 1})
    return MackeyFunctor(ts, dims, res, tr, conj, name="burnside")


def represented_mackey(ts: TransferSystem, k: int) -> MackeyFunctor:
    """The functor L -> A(G/K, G/L), acting by composition of spans."""
    lat = ts.lattice
    cat = span_category(ts)
    basis = {l: cat.basis(k, l) for l in ts.members}
    dims = {l: len(b) for l, b in basis.items()}

    def post(src, tgt, span):
        cols = []
        for s in basis[src]:
            v = [Fraction(0)] * dims[tgt]
            for key, c in cat.compose(k, src, tgt, s, span).items():
                v[cat.position(k, tgt, key)] += c
            cols.append(v)
        return Mat.from_columns(cols, dims[tgt])

    res, tr, conj = {}, {}, {}
    for l in ts.members:
        for j in lat.subgroups_of(l):
            res[(l, j)] = post(l, j, cat.res_span(l, j))
        for j in ts.sources(l):
            tr[(j, l)] = post(j, l, cat.tr_span(j, l))
        for g in range(lat.group.order):
            conj[(g, l)] = post(l, lat.conj(g, l), cat.conj_span(g, l))
    return MackeyFunctor(ts, dims, res, tr, conj, name=f"A(G/{lat.label(k)},-)")


def direct_sum(Ms) -> MackeyFunctor:
    Ms = list(Ms)
    first = Ms[0]
    for M in Ms[1:]:
        if M.ts != first.ts or M.levels != first.levels:
            raise DimensionMismatch("summands live over different data")
    dims = {l: sum(M.dim(l) for M in Ms) for l in first.levels}
    res = {key: block_diag([M.res[key] for M in Ms]) for key in first.res}
    tr = {key: block_diag([M.tr[key] for M in Ms]) for key in first.tr}
    conj = {key: block_diag([M.conj[key] for M in Ms]) for key in first.conj}
    return MackeyFunctor(first.ts, dims, res, tr, conj, levels=first.levels,
                         name=" + ".join(M.name or "?" for M in Ms))


def restrict_to_family(M: MackeyFunctor, h: int) -> MackeyFunctor:
    """Forget every level that is not subconjugate to H."""
    lat = M.lattice
    fam = [l for l in M.levels if lat.subconjugate(l, h, M.ts.top)]
    keep = set(fam)
    return MackeyFunctor(
        M.ts, {l: M.dim(l) for l in fam},
        {key: m for key, m in M.res.items() if key[0] in keep},
        {key: m for key, m in M.tr.items() if key[1] in keep},
        {key: m for key, m in M.conj.items() if key[1] in keep},
        levels=fam, name=M.name)


def change_basis(M: MackeyFunctor, bases: Mapping[int, Mat], name=None) -> MackeyFunctor:
    """The subfunctor spanned levelwise by the columns of ``bases`` (assumed stable)."""
    lat = M.lattice
    dims = {l: bases[l].ncols for l in M.levels}

    def restrict(target_basis, m, source_basis):
        if target_basis.ncols == 0 or source_basis.ncols == 0:
            return Mat.zeros(target_basis.ncols, source_basis.ncols)
        return solve(target_basis, m @ source_basis)

    res = {(l, k): restrict(bases[k], m, bases[l]) for (l, k), m in M.res.items()}
    tr = {(k, l): restrict(bases[l], m, bases[k]) for (k, l), m in M.tr.items()}
    conj = {(g, l): restrict(bases[lat.conj(g, l)], m, bases[l]) for (g, l), m in M.conj.items()}
    return MackeyFunctor(M.ts, dims, res, tr, conj, levels=M.levels, name=name or M.name)


# ---------------------------------------------------------------------------
# the Burnside ring acting


def act(x: BurnsideElement, M: MackeyFunctor) -> dict[int, Mat]:
    """Levelwise action; the orbit L/J acts as tr^L_J res^L_J."""
    lat = M.lattice
    out = {}
    for l in M.levels:
        y = x if x.level == l else restrict_element(x, l)
        d = M.dim(l)
        total = Mat.zeros(d, d)
        for j, c in y.coeffs.items():
            if not M.has_tr(j, l):
                raise InadmissibleAction(f"{lat.label(l)}/{lat.label(j)}", lat.label(l))
            if d:
                total = total + (M.tr_map(j, l) @ M.res_map(l, j)).scale(c)
        out[l] = total
    return out


@dataclass
class Splitting:
    original: MackeyFunctor
    summands: dict[int, MackeyFunctor]  # class label -> e M
    inclusions: dict[int, dict[int, Mat]]  # class label -> level -> basis of the image
    certificate: dict[int, Mat]  # level -> the assembled inclusion, invertible

    def reassembly_ok(self) -> bool:
        return all(m.is_invertible() for m in self.certificate.values())


def split(M: MackeyFunctor, ts: TransferSystem | None = None) -> Splitting:
    """Split M by the primitive idempotents of the Burnside ring of ``ts`` (default: M's own)."""
    ts = M.ts if ts is None else ts
    summands, inclusions = {}, {}
    for rep in partition(ts).classes:
        e = idempotent(ts, rep)
        proj = act(e, M)
        bases = {l: image(p) for l, p in proj.items()}
        inclusions[rep] = bases
        summands[rep] = change_basis(M, bases, name=f"e[{M.lattice.label(rep)}]{M.name or ''}")
    certificate = {l: hstack([inclusions[r][l] for r in inclusions], M.dim(l)) for l in M.levels}
    return Splitting(M, summands, inclusions, certificate)


# ---------------------------------------------------------------------------
# morphisms


def is_morphism(M: MackeyFunctor, N: MackeyFunctor, phi: Mapping[int, Mat]) -> bool:
    lat = M.lattice
    for (l, k), m in M.res.items():
        if phi[k] @ m != N.res[(l, k)] @ phi[l]:
            return False
    for (k, l), m in M.tr.items():
        if phi[l] @ m != N.tr[(k, l)] @ phi[k]:
            return False
    for (g, l), m in M.conj.items():
        if phi[lat.conj(g, l)] @ m != N.conj[(g, l)] @ phi[l]:
            return False
    return True


def is_isomorphism(M, N, phi) -> bool:
    return all(phi[l].is_invertible() for l in M.levels) and is_morphism(M, N, phi)


def find_isomorphism(M: MackeyFunctor, N: MackeyFunctor, tries: int = 8) -> dict[int, Mat] | None:
    """Look for levelwise invertible maps commuting with all structure maps.

    Solves the linear conditions for a morphism, then tests a few
    deterministic combinations of the solution basis for invertibility.
    """
    if M.levels != N.levels or any(M.dim(l) != N.dim(l) for l in M.levels):
        return None
    lat = M.lattice
    offsets, n = {}, 0
    for l in M.levels:
        offsets[l] = n
        n += M.dim(l) * M.dim(l)

    def var(l, i, j):
        return offsets[l] + i * M.dim(l) + j

    rows = []

    def commute(a_lvl, mM, b_lvl, mN):
        # phi_b . mM == mN . phi_a  with mM: M(a) -> M(b), mN: N(a) -> N(b)
        db, da = M.dim(b_lvl), M.dim(a_lvl)
        for i in range(db):
            for j in range(da):
                row = {}
                for t in range(db):
                    c = mM[t, j]
                    if c:
                        key = var(b_lvl, i, t)
                        row[key] = row.get(key, 0) + c
                for t in range(da):
                    c = mN[i, t]
                    if c:
                        key = var(a_lvl, t, j)
                        row[key] = row.get(key, 0) - c
                if any(row.values()):
                    dense = [Fraction(0)] * n
                    for key, c in row.items():
                        dense[key] = Fraction(c)
                    rows.append(dense)

    gens = _generators(lat.group)
    for (l, k), m in M.res.items():
        if k != l:
            commute(l, m, k, N.res[(l, k)])
    for (k, l), m in M.tr.items():
        if k != l:
            commute(k, m, l, N.tr[(k, l)])
    for (g, l), m in M.conj.items():
        if g in gens:
            commute(l, m, lat.conj(g, l), N.conj[(g, l)])
    basis = nullspace(Mat(rows, n)) if rows else [tuple(Fraction(int(i == j)) for j in range(n))
                                                  for i in range(n)]
    for t in range(tries):
        v = [Fraction(0)] * n
        for idx, b in enumerate(basis):
            c = Fraction((idx * (t + 2) + t) % 7 + 1)
            for p, x in enumerate(b):
                if x:
                    v[p] += c * x
        phi = {}
        for l in M.levels:
            d = M.dim(l)
            phi[l] = Mat([[v[var(l, i, j)] for j in range(d)] for i in range(d)], d)
        if all(phi[l].is_invertible() for l in M.levels) and is_morphism(M, N, phi):
            return phi
    return None


def _generators(G) -> set[int]:
    """A small generating set, greedily chosen."""
    lat = G.lattice
    gens, span = [], lat.by_mask[1]
    for g in range(G.order):
        if not lat.contains_element(span, g):
            gens.append(g)
            m = lat.masks[span] | (1 << g)
            # smallest subgroup containing the current span and g
            span = min((h for h in range(lat.n) if lat.masks[h] & m == m), key=lat.order)
    return set(gens)


# ---------------------------------------------------------------------------
# serialization


def _mat_json(m: Mat):
    return [[str(x) for x in r] for r in m.rows]


def mackey_to_json(M: MackeyFunctor, ts_ref=None, all_conj: bool = False) -> dict:
    lat = M.lattice
    gens = sorted(_generators(lat.group))
    d = {}
    if ts_ref is not None:
        d["ts"] = ts_ref
    if M.levels != tuple(M.ts.members):
        d["family"] = True
    d["levels"] = {str(l): M.dim(l) for l in M.levels}
    d["res"] = {f"{l}>{k}": _mat_json(m) for (l, k), m in sorted(M.res.items())
                if k != l and m.nrows and m.ncols}
    d["tr"] = {f"{k}>{l}": _mat_json(m) for (k, l), m in sorted(M.tr.items())
               if k != l and m.nrows and m.ncols}
    d["conj"] = {f"{g},{l}": _mat_json(m) for (g, l), m in sorted(M.conj.items())
                 if (all_conj or g in gens) and m.nrows and m.ncols}
    return d


def _parse_ts(ref, group=None):
    if isinstance(ref, TransferSystem):
        return ref
    if isinstance(ref, str):
        with open(ref) as fh:
            ref = json.load(fh)
    if group is None:
        group = load_group(ref["group"])
    lat = group.lattice
    return generate(lat, [parse_pair(lat, p) for p in ref.get("pairs", []) if p[0] != p[1]])


def mackey_from_json(d, ts: TransferSystem | None = None) -> MackeyFunctor:
    if isinstance(d, str):
        with open(d) as fh:
            d = json.load(fh)
    if ts is None:
        if "ts" not in d:
            raise GroupError("Mackey functor file needs a 'ts'")
        ts = _parse_ts(d["ts"])
    lat = ts.lattice
    dims = {lat.parse(k): int(v) for k, v in d.get("levels", {}).items()}
    levels = sorted(dims) if "family" in d else None

    def mats(section, shape_of):
        out = {}
        for key, rows in d.get(section, {}).items():
            a, b = key.split(">") if ">" in key else key.split(",")
            pair = (lat.parse(a), lat.parse(b)) if ">" in key else (int(a), lat.parse(b))
            nrows, ncols = shape_of(pair)
            if len(rows) != nrows or any(len(r) != ncols for r in rows):
                raise DimensionMismatch(f"{section} {key} has the wrong shape")
            out[pair] = Mat([[Fraction(x) for x in r] for r in rows], ncols)
        return out

    dim = dims.get
    res = mats("res", lambda p: (dim(p[1], 0), dim(p[0], 0)))
    tr = mats("tr", lambda p: (dim(p[1], 0), dim(p[0], 0)))
    conj = mats("conj", lambda p: (dim(lat.conj(p[0], p[1]), 0), dim(p[1], 0)))
    return MackeyFunctor(ts, dims, res, tr, conj, levels=levels)


def to_dot(M: MackeyFunctor, title: str | None = None) -> str:
    """Lewis diagram: one node per level, covers only, res solid, tr dashed, conj dotted."""
    lat = M.lattice
    lab = lat.label
    lines = [f'digraph "{title or M.name or "mackey"}" {{', "  rankdir=BT;", "  node [shape=box];"]
    for l in sorted(M.levels, key=lambda x: (-lat.order(x), x)):
        lines.append(f'  n{l} [label="{lab(l)}: dim {M.dim(l)}"];')

    def covers(l):
        below = [k for k in lat.subgroups_of(l) if k != l]
        return [k for k in below if not any(k != j and lat.le(k, j) for j in below)]

    for l in M.levels:
        for k in covers(l):
            if M.dim(l) or M.dim(k):
                lines.append(f'  n{l} -> n{k} [label="res", style=solid];')
            if M.has_tr(k, l) and (M.dim(l) or M.dim(k)):
                lines.append(f'  n{k} -> n{l} [label="tr", style=dashed];')
        nl = lat.normalizer_in(l)
        if lat.order(nl) > lat.order(l) and M.dim(l):
            lines.append(f'  n{l} -> n{l} [label="W", style=dotted];')
    lines.append("}")
    return "\n".join(lines) + "\n"
