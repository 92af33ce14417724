"""Induction and coinduction of Mackey functors supported on one inseparability class.

The closed forms build each level L from the orbits of L on the set of
maximal class members below it: coinvariants for induction, fixed points for
coinduction.  The coend and end over the span category give independent
(and much slower) versions of the same functors.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .groups import GroupError, double_cosets
from .insep import partition, top_set
from .linalg import Mat, free_coordinates, hstack, image, nullspace, solve, vstack
from .mackey import (MackeyFunctor, _generators, is_isomorphism, is_morphism,
                     restrict_to_family)
from .spans import span_category
from .transfer import TransferSystem


class NotClassFunctor(GroupError):
    pass


def family_of(ts: TransferSystem, rep: int) -> list[int]:
    lat = ts.lattice
    return [l for l in ts.members if lat.subconjugate(l, rep, ts.top)]


def check_class_functor(ts: TransferSystem, rep: int, M: MackeyFunctor) -> None:
    cls = set(partition(ts).members(rep))
    fam = family_of(ts, rep)
    if list(M.levels) != fam:
        raise NotClassFunctor("levels must be exactly the subgroups subconjugate to the class label")
    for l in fam:
        if l not in cls and M.dim(l):
            raise NotClassFunctor(f"nonzero at {ts.lattice.label(l)}, which is outside the class")


def class_restriction(M: MackeyFunctor, rep: int) -> MackeyFunctor:
    """Restrict to the family below H; M must already vanish off the class there."""
    R = restrict_to_family(M, rep)
    check_class_functor(M.ts, rep, R)
    return R


def _averaging(M: MackeyFunctor, p: int, stab: tuple[int, ...]) -> Mat:
    d = M.dim(p)
    total = Mat.zeros(d, d)
    for n in stab:
        total = total + M.conj_map(n, p)
    return total.scale(Fraction(1, len(stab)))


@dataclass
class _Block:
    rep: int
    offset: int
    basis: Mat  # columns in M(P): coinvariant lifts or fixed vectors
    coords: Mat | None  # M(P) -> block coordinates (induction only)


class _Level:
    """Orbit decomposition of the maximal class members below one level."""

    def __init__(self, ts, rep, M, l, kind):
        lat = ts.lattice
        self.level = l
        self.blocks: list[_Block] = []
        self.rep_of: dict[int, tuple[int, int]] = {}  # member Q -> (orbit rep P, x in L with xQx^-1 = P)
        self.hull_of: dict[int, int] = {}
        self.block_of: dict[int, _Block] = {}
        self.dim = 0
        cls = partition(ts).members(rep)
        if not any(lat.le(k, l) for k in cls):
            return
        T = top_set(ts, l, rep)
        self.hull_of = T.hull_of
        inv = lat.group.inv
        for orbit in T.orbits:
            p = orbit[0]
            for x in lat.elements(l):
                q = lat.conj(inv[x], p)
                self.rep_of.setdefault(q, (p, x))
            stab = lat.elements(lat.normalizer_in(p, l))
            d = M.dim(p)
            if kind == "ind":
                avg = _averaging(M, p, stab)
                b = image(avg)
                coords = solve(b, avg) if b.ncols else Mat.zeros(0, d)
            else:
                rows = vstack([M.conj_map(n, p) - Mat.identity(d) for n in stab], d) if d else None
                fixed = nullspace(rows) if d else []
                b = Mat.from_columns(fixed, d)
                coords = None
            self.blocks.append(_Block(p, self.dim, b, coords))
            self.dim += b.ncols
        self.block_of = {b.rep: b for b in self.blocks}

    def embed(self, M, q) -> Mat:
        """Induction: M(Q) -> Ind(L), m -> tr_Q^L(m), for a member Q."""
        p, x = self.rep_of[q]
        b = self.block_of[p]
        local = b.coords @ M.conj_map(x, q)
        return _place_rows(local, b.offset, self.dim)

    def evaluate(self, M, q) -> Mat:
        """Coinduction: CoInd(L) -> M(Q), phi -> phi(Q), for a member Q."""
        p, x = self.rep_of[q]
        b = self.block_of[p]
        xi = M.lattice.group.inv[x]
        return M.conj_map(xi, p) @ _place_cols(b.basis, b.offset, self.dim)


def _place_rows(m: Mat, offset: int, total: int) -> Mat:
    z = (Fraction(0),) * m.ncols
    rows = [z] * offset + list(m.rows) + [z] * (total - offset - m.nrows)
    return Mat._raw(tuple(rows), m.ncols)


def _place_cols(m: Mat, offset: int, total: int) -> Mat:
    z = Fraction(0)
    rows = tuple((z,) * offset + r + (z,) * (total - offset - m.ncols) for r in m.rows)
    return Mat._raw(rows, total)


def _assemble_columns(blocks_cols, nrows):
    return hstack(blocks_cols, nrows) if blocks_cols else Mat.zeros(nrows, 0)


@dataclass
class ClosedForm:
    functor: MackeyFunctor
    levels: dict[int, _Level]


def induct_class(ts: TransferSystem, rep: int, M: MackeyFunctor) -> ClosedForm:
    """Left adjoint of class restriction, by the orbit/coinvariant formula."""
    check_class_functor(ts, rep, M)
    lat = ts.lattice
    inv = lat.group.inv
    data = {l: _Level(ts, rep, M, l, "ind") for l in ts.members}
    dims = {l: d.dim for l, d in data.items()}

    def build(src, tgt, per_block):
        cols = []
        for b in data[src].blocks:
            cols.append(per_block(b) @ b.basis if b.basis.ncols else Mat.zeros(dims[tgt], 0))
        return _assemble_columns(cols, dims[tgt])

    res, tr, conj = {}, {}, {}
    for l in ts.members:
        for k in lat.subgroups_of(l):
            def f(b, l=l, k=k):
                p = b.rep
                total = Mat.zeros(dims[k], M.dim(p))
                for x in double_cosets(lat, k, p, l):
                    q = lat.meet(k, lat.conj(x, p))
                    lower = lat.meet(lat.conj(inv[x], k), p)
                    if M.dim(q) == 0:
                        continue
                    total = total + data[k].embed(M, q) @ M.conj_map(x, lower) @ M.res_map(p, lower)
                return total
            res[(l, k)] = build(l, k, f)
        for k in ts.sources(l):
            def f(b, l=l, k=k):
                p = b.rep
                p2 = lat.meet(l, data[k].hull_of[p])
                return data[l].embed(M, p2) @ M.tr_map(p, p2)
            tr[(k, l)] = build(k, l, f)
        for g in range(lat.group.order):
            gl = lat.conj(g, l)
            conj[(g, l)] = build(l, gl, lambda b, g=g, gl=gl:
                                 data[gl].embed(M, lat.conj(g, b.rep)) @ M.conj_map(g, b.rep))
    F = MackeyFunctor(ts, dims, res, tr, conj, name=f"Ind[{lat.label(rep)}]")
    return ClosedForm(F, data)


def coinduct_class(ts: TransferSystem, rep: int, M: MackeyFunctor, transfer_formula: int = 2
                   ) -> ClosedForm:
    """Right adjoint of class restriction, by the orbit/fixed-point formula.

    The transfer has two equivalent expressions; ``transfer_formula`` picks one.
    """
    check_class_functor(ts, rep, M)
    lat = ts.lattice
    inv = lat.group.inv
    data = {l: _Level(ts, rep, M, l, "coind") for l in ts.members}
    dims = {l: d.dim for l, d in data.items()}

    def build(src, tgt, value_at):
        """Stack, over the orbit reps Q of the target, coordinates of the value at Q."""
        rows = []
        for b in data[tgt].blocks:
            v = value_at(b.rep)  # CoInd(src) -> M(Q)
            rows.append(solve(b.basis, v) if b.basis.ncols else Mat.zeros(0, dims[src]))
        return vstack(rows, dims[src]) if rows else Mat.zeros(0, dims[src])

    res, tr, conj = {}, {}, {}
    for l in ts.members:
        for k in lat.subgroups_of(l):
            def val(q, l=l, k=k):
                p2 = lat.meet(l, data[k].hull_of[q])
                return M.res_map(p2, q) @ data[l].evaluate(M, p2)
            res[(l, k)] = build(l, k, val)
        for k in ts.sources(l):
            tr[(k, l)] = build(k, l, lambda p, l=l, k=k: _coind_transfer(
                ts, M, data, k, l, p, transfer_formula))
        for g in range(lat.group.order):
            gl = lat.conj(g, l)
            gi = inv[g]
            conj[(g, l)] = build(l, gl, lambda q, g=g, gi=gi, l=l:
                                 M.conj_map(g, lat.conj(gi, q)) @ data[l].evaluate(M, lat.conj(gi, q)))
    F = MackeyFunctor(ts, dims, res, tr, conj, name=f"CoInd[{lat.label(rep)}]")
    return ClosedForm(F, data)


def _coind_transfer(ts, M, data, k, l, p, formula):
    lat = ts.lattice
    inv = lat.group.inv
    total = Mat.zeros(M.dim(p), data[k].dim)
    for x in double_cosets(lat, p, k, l):
        xi = inv[x]
        conj_p = lat.conj(xi, p)
        q = lat.meet(conj_p, k)
        if M.dim(q) == 0 or q not in data[k].rep_of:
            continue
        phi_q = data[k].evaluate(M, q)
        if formula == 1:
            xq = lat.conj(x, q)
            term = M.tr_map(xq, p) @ M.conj_map(x, q) @ phi_q
        else:
            term = M.conj_map(x, conj_p) @ M.tr_map(q, conj_p) @ phi_q
        total = total + term
    return total


# ---------------------------------------------------------------------------
# span-category oracles


def _generator_spans(ts, fam):
    """(J, K, span, kind, g): covering restrictions, transfers and generator conjugations.

    Classes are convex, so restriction covers taken inside the family
    generate every restriction between family members.
    """
    lat = ts.lattice
    cat = span_category(ts)
    fs = set(fam)
    out = []
    for j in fam:
        below = [k for k in lat.subgroups_of(j) if k != j and k in fs]
        for k in below:
            if not any(m != k and lat.le(k, m) for m in below):
                out.append((j, k, cat.res_span(j, k), "res", None))
        for k in ts.targets(j):
            if k != j and k in fs:
                out.append((j, k, cat.tr_span(j, k), "tr", None))
        for g in sorted(_generators(lat.group)):
            out.append((j, lat.conj(g, j), cat.conj_span(g, j), "conj", g))
    return out


def _gen_matrix(M, j, k, kind, g):
    if kind == "res":
        return M.res_map(j, k)
    if kind == "tr":
        return M.tr_map(j, k)
    return M.conj_map(g, j)


@dataclass
class OracleLevel:
    index: dict  # (K, i, span) -> position in the ambient space
    size: int
    free: list  # ambient positions that survive as basis vectors
    coords: list  # coords[p]: sparse coordinates of ambient vector p in the quotient / kernel

    @property
    def dim(self) -> int:
        return len(self.free)

    def kernel(self) -> Mat:
        """Columns spanning the subspace (end) read off the coordinates."""
        rows = [[0] * self.dim for _ in range(self.size)]
        for p, c in enumerate(self.coords):
            for i, v in c.items():
                rows[p][i] = v
        return Mat(rows, self.dim)


def _structure_maps(ts, cat, induced):
    lat = ts.lattice
    res, tr, conj = {}, {}, {}
    for l in ts.members:
        for k in lat.subgroups_of(l):
            res[(l, k)] = induced(l, k, cat.res_span(l, k))
        for k in ts.sources(l):
            tr[(k, l)] = induced(k, l, cat.tr_span(k, l))
        for g in range(lat.group.order):
            conj[(g, l)] = induced(l, lat.conj(g, l), cat.conj_span(g, l))
    return res, tr, conj


def coend_induction(ts: TransferSystem, rep: int, M: MackeyFunctor) -> tuple[MackeyFunctor, dict]:
    """Ind as the quotient of the sum of M(K) (x) A(G/K, G/L) by the balancing relations."""
    check_class_functor(ts, rep, M)
    lat = ts.lattice
    cat = span_category(ts)
    fam = list(M.levels)
    live = [k for k in fam if M.dim(k)]
    gens = _generator_spans(ts, fam)
    levels = {}
    for l in ts.members:
        index = {}
        for k in live:
            for s in cat.basis(k, l):
                for i in range(M.dim(k)):
                    index[(k, i, s)] = len(index)
        rels = []
        for j, k, t, kind, g in gens:
            if M.dim(j) == 0:
                continue
            mt = _gen_matrix(M, j, k, kind, g)
            for s in cat.basis(k, l):
                st = cat.compose(j, k, l, t, s)
                for i in range(M.dim(j)):
                    row = {}
                    for r in range(M.dim(k)):
                        c = mt[r, i]
                        if c:
                            pos = index[(k, r, s)]
                            row[pos] = row.get(pos, 0) + c
                    for u, c in st.items():
                        pos = index[(j, i, u)]
                        row[pos] = row.get(pos, 0) - c
                    if any(row.values()):
                        rels.append(row)
        free, coords = free_coordinates(rels, len(index))
        levels[l] = OracleLevel(index, len(index), free, coords)

    def induced(src, tgt, r):
        """m (x) s -> m (x) (r after s) for r in A(G/src, G/tgt)."""
        a, b = levels[src], levels[tgt]
        keys = list(a.index)
        cols = []
        for f in a.free:
            k, i, s = keys[f]
            v = [0] * b.dim
            for u, c in cat.compose(k, src, tgt, s, r).items():
                for slot, x in b.coords[b.index[(k, i, u)]].items():
                    v[slot] += c * x
            cols.append(v)
        return Mat.from_columns(cols, b.dim)

    res, tr, conj = _structure_maps(ts, cat, induced)
    dims = {l: v.dim for l, v in levels.items()}
    return MackeyFunctor(ts, dims, res, tr, conj, name=f"coend[{lat.label(rep)}]"), levels


def end_coinduction(ts: TransferSystem, rep: int, M: MackeyFunctor) -> tuple[MackeyFunctor, dict]:
    """CoInd as natural transformations from A(G/L, -) to M on the family."""
    check_class_functor(ts, rep, M)
    lat = ts.lattice
    cat = span_category(ts)
    fam = list(M.levels)
    live = [k for k in fam if M.dim(k)]
    gens = _generator_spans(ts, fam)
    levels = {}
    for l in ts.members:
        index = {}
        for k in live:
            for s in cat.basis(l, k):
                for i in range(M.dim(k)):
                    index[(k, i, s)] = len(index)
        rows = []
        for j, k, t, kind, g in gens:
            if M.dim(k) == 0:
                continue
            mt = _gen_matrix(M, j, k, kind, g)
            for s in cat.basis(l, j):
                ts_ = cat.compose(l, j, k, s, t)
                for r in range(M.dim(k)):
                    row = {}
                    for u, c in ts_.items():
                        pos = index[(k, r, u)]
                        row[pos] = row.get(pos, 0) + c
                    for i in range(M.dim(j)):
                        c = mt[r, i]
                        if c:
                            pos = index[(j, i, s)]
                            row[pos] = row.get(pos, 0) - c
                    if any(row.values()):
                        rows.append(row)
        free, coords = free_coordinates(rows, len(index))
        levels[l] = OracleLevel(index, len(index), free, coords)

    def induced(src, tgt, r):
        """psi -> (s -> psi(s after r)) for r in A(G/src, G/tgt).

        A kernel vector is determined by its free coordinates, so only the
        free positions of the target are evaluated.
        """
        a, b = levels[src], levels[tgt]
        keys = list(b.index)
        out_rows = []
        for f in b.free:
            k, i, s = keys[f]
            row = [0] * a.dim
            for u, c in cat.compose(src, tgt, k, r, s).items():
                for slot, x in a.coords[a.index[(k, i, u)]].items():
                    row[slot] += c * x
            out_rows.append(row)
        return Mat(out_rows, a.dim)

    res, tr, conj = _structure_maps(ts, cat, induced)
    dims = {l: v.dim for l, v in levels.items()}
    return MackeyFunctor(ts, dims, res, tr, conj, name=f"end[{lat.label(rep)}]"), levels


def compare_induction(ts, rep, M) -> bool:
    """The closed form and the coend agree, via tr_P^L(m) -> m (x) (G/P = G/P -> G/L)."""
    closed = induct_class(ts, rep, M)
    coend, levels = coend_induction(ts, rep, M)
    cat = span_category(ts)
    phi = {}
    for l, data in closed.levels.items():
        lv = levels[l]
        cols = []
        for b in data.blocks:
            if not b.basis.ncols:
                continue
            span = cat.tr_span(b.rep, l)
            for c in range(b.basis.ncols):
                v = [0] * lv.dim
                for i in range(M.dim(b.rep)):
                    x = b.basis[i, c]
                    if x:
                        for slot, y in lv.coords[lv.index[(b.rep, i, span)]].items():
                            v[slot] += x * y
                cols.append(v)
        phi[l] = Mat.from_columns(cols, lv.dim)
    return is_isomorphism(closed.functor, coend, phi)


def compare_coinduction(ts, rep, M) -> bool:
    """The closed form and the end agree, via psi -> (P -> psi_P(G/L <- G/P = G/P))."""
    closed = coinduct_class(ts, rep, M)
    end, levels = end_coinduction(ts, rep, M)
    cat = span_category(ts)
    phi = {}
    for l, data in closed.levels.items():
        lv = levels[l]
        rows = []
        for b in data.blocks:
            span = cat.res_span(l, b.rep)
            ev_rows = []
            for i in range(M.dim(b.rep)):
                row = [0] * lv.dim
                for slot, y in lv.coords[lv.index[(b.rep, i, span)]].items():
                    row[slot] = y
                ev_rows.append(row)
            ev = Mat(ev_rows, lv.dim)
            rows.append(solve(b.basis, ev) if b.basis.ncols else Mat.zeros(0, lv.dim))
        phi[l] = vstack(rows, lv.dim) if rows else Mat.zeros(0, lv.dim)
    return is_isomorphism(end, closed.functor, phi)


def coinduction_formulas_agree(ts, rep, M) -> bool:
    a = coinduct_class(ts, rep, M, transfer_formula=1).functor
    b = coinduct_class(ts, rep, M, transfer_formula=2).functor
    return a.tr == b.tr


# ---------------------------------------------------------------------------
# unit, counit and the norm map


def counit(ts, rep, M: MackeyFunctor, ind: ClosedForm | None = None) -> dict[int, Mat]:
    """Ind(class restriction of M) -> M: tr_P^L(m) -> tr^L_P(m)."""
    ind = ind or induct_class(ts, rep, class_restriction(M, rep))
    out = {}
    for l, data in ind.levels.items():
        cols = [M.tr_map(b.rep, l) @ b.basis for b in data.blocks if b.basis.ncols]
        out[l] = _assemble_columns(cols, M.dim(l))
    return out


def unit(ts, rep, M: MackeyFunctor, coind: ClosedForm | None = None) -> dict[int, Mat]:
    """M -> CoInd(class restriction of M): m -> (P -> res^L_P m)."""
    coind = coind or coinduct_class(ts, rep, class_restriction(M, rep))
    out = {}
    for l, data in coind.levels.items():
        rows = [solve(b.basis, M.res_map(l, b.rep)) for b in data.blocks if b.basis.ncols]
        out[l] = vstack(rows, M.dim(l)) if rows else Mat.zeros(0, M.dim(l))
    return out


@dataclass
class FrobeniusReport:
    invertible: bool
    blocks_ok: bool
    counit_morphism: bool
    unit_morphism: bool
    counit_surjective: bool

    def __bool__(self):
        return all((self.invertible, self.blocks_ok, self.counit_morphism, self.unit_morphism,
                    self.counit_surjective))


def frobenius_check(ts: TransferSystem, rep: int, M: MackeyFunctor) -> FrobeniusReport:
    """Counit then unit, Ind -> M -> CoInd, is invertible and blockwise a trace."""
    lat = ts.lattice
    R = class_restriction(M, rep)
    ind = induct_class(ts, rep, R)
    coind = coinduct_class(ts, rep, R)
    eps = counit(ts, rep, M, ind)
    eta = unit(ts, rep, M, coind)
    invertible = True
    blocks_ok = True
    surjective = True
    for l in ts.members:
        comp = eta[l] @ eps[l]
        if not comp.is_invertible():
            invertible = False
        if eps[l].rank() != M.dim(l):
            surjective = False
        ib, cb = ind.levels[l].blocks, coind.levels[l].blocks
        for bi in ib:
            for bc in cb:
                block = Mat([r[bi.offset:bi.offset + bi.basis.ncols]
                             for r in comp.rows[bc.offset:bc.offset + bc.basis.ncols]],
                            bi.basis.ncols)
                if bi.rep != bc.rep:
                    expected = Mat.zeros(bc.basis.ncols, bi.basis.ncols)
                else:
                    p = bi.rep
                    trace = Mat.zeros(R.dim(p), R.dim(p))
                    seen = set()
                    for n in lat.elements(lat.normalizer_in(p, l)):
                        coset = frozenset(lat.group.mul[n][x] for x in lat.elements(p))
                        if coset in seen:
                            continue
                        seen.add(coset)
                        trace = trace + R.conj_map(n, p)
                    expected = solve(bc.basis, trace @ bi.basis) if bc.basis.ncols else \
                        Mat.zeros(0, bi.basis.ncols)
                if block != expected:
                    blocks_ok = False
    return FrobeniusReport(invertible, blocks_ok, is_morphism(ind.functor, M, eps),
                           is_morphism(M, coind.functor, eta), surjective)


# ---------------------------------------------------------------------------
# passing to the normalizer


@dataclass
class NormalizerData:
    rep: int
    normalizer: int
    ts: TransferSystem  # restricted to N
    functor: MackeyFunctor  # levels: subgroups of H, zero off the hull-H component
    component: list[int]  # the K <= H with hull H
    cosets: list[int]  # representatives of G/N


def restrict_to_normalizer(ts: TransferSystem, rep: int, M: MackeyFunctor) -> NormalizerData:
    """Keep the levels K <= H whose hull is H, acted on by N = N_G(H)."""
    check_class_functor(ts, rep, M)
    lat = ts.lattice
    part = partition(ts)
    n = lat.normalizer_in(rep, ts.top)
    tsn = ts.restrict(n)
    comp = {k for k in part.members(rep) if part.hull[k] == rep}
    levels = lat.subgroups_of(rep)
    dims = {k: (M.dim(k) if k in comp else 0) for k in levels}
    lv = set(levels)

    def keep(a, b):
        return a in comp and b in comp

    res = {(l, k): m for (l, k), m in M.res.items() if l in lv and k in lv and keep(l, k)}
    tr = {(k, l): m for (k, l), m in M.tr.items() if l in lv and k in lv and keep(k, l)
          and tsn.rel(k, l)}
    nel = set(lat.elements(n))
    conj = {(g, l): m for (g, l), m in M.conj.items() if g in nel and l in lv and keep(l, l)}
    F = MackeyFunctor(tsn, dims, res, tr, conj, levels=levels, name=f"N-data[{lat.label(rep)}]")
    cos = [c[0] for c in lat.left_cosets(n, ts.top)]
    return NormalizerData(rep, n, tsn, F, sorted(comp), cos)


def reconstruct_from_normalizer(ts: TransferSystem, D: NormalizerData) -> tuple[MackeyFunctor, dict]:
    """Rebuild the class functor on G from normalizer data.

    Level gKg^-1 (g a coset rep of G/N, K in the hull-H component) is D(K).
    Returns the functor together with the tombstone identification
    gKg^-1 -> K used to define it.
    """
    lat = ts.lattice
    G = lat.group
    F = D.functor
    ident = {}  # class member -> (coset rep g, K)
    for g in D.cosets:
        for k in D.component:
            ident[lat.conj(g, k)] = (g, k)
    fam = family_of(ts, D.rep)
    dims = {l: (F.dim(ident[l][1]) if l in ident else 0) for l in fam}
    nel = set(lat.elements(D.normalizer))
    res, tr, conj = {}, {}, {}
    for l in fam:
        if l not in ident:
            continue
        g, kl = ident[l]
        for k in lat.subgroups_of(l):
            if k in ident and k != l:
                g2, kk = ident[k]
                if g2 == g:
                    res[(l, k)] = F.res_map(kl, kk)
        for k in ts.sources(l):
            if k in ident and k != l:
                g2, kk = ident[k]
                if g2 == g and F.has_tr(kk, kl):
                    tr[(k, l)] = F.tr_map(kk, kl)
        for a in range(G.order):
            al = lat.conj(a, l)
            g3, kal = ident[al]
            # a g = g3 n with n in N
            nn = G.mul[G.inv[g3]][G.mul[a][g]]
            assert nn in nel
            conj[(a, l)] = F.conj_map(nn, kl)
    R = MackeyFunctor(ts, dims, res, tr, conj, levels=fam, name=f"rebuilt[{lat.label(D.rep)}]")
    return R, ident


def normalizer_round_trip(ts: TransferSystem, rep: int, M: MackeyFunctor) -> bool:
    """Rebuild M from its normalizer data and check the identification is an isomorphism."""
    D = restrict_to_normalizer(ts, rep, M)
    R, ident = reconstruct_from_normalizer(ts, D)
    lat = ts.lattice
    phi = {}
    for l in M.levels:
        if l in ident:
            g, k = ident[l]
            # R(l) = M(k); compare with M(l) through conjugation by g
            phi[l] = M.conj_map(lat.group.inv[g], l)
        else:
            phi[l] = Mat.zeros(R.dim(l), M.dim(l))
    return is_isomorphism(M, R, phi)
