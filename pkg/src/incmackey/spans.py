"""Spans of orbits G/K <- G/J -> G/L with admissible right leg.

An orbit span is a G-orbit of triples (J, y, z) with y in G/K, z in G/L and
J inside both stabilizers, where J -> stab(z) must lie in the transfer
system.  Every orbit contains a triple with z = eL, so a basis element of
A(G/K, G/L) is stored as ``(J, y)``: J <= L with J -> L, and y the index of
a coset of K fixed by J, taken lexicographically least over the L-action.

Composition ``compose(s, t)`` means "s, then t" and is computed by pulling
back over the middle orbit and splitting the result into orbits.
"""

from __future__ import annotations

from functools import cached_property

from .groups import SubgroupLattice
from .transfer import TransferSystem

Span = tuple[int, int]  # (J, y)


class Cosets:
    """Left cosets gK for every subgroup K, ordered by least element."""

    def __init__(self, lat: SubgroupLattice):
        self.lat = lat
        self._reps: dict[int, tuple[int, ...]] = {}
        self._index: dict[int, tuple[int, ...]] = {}

    def _build(self, k):
        lat = self.lat
        cos = lat.left_cosets(k)
        idx = [0] * lat.group.order
        for i, c in enumerate(cos):
            for g in c:
                idx[g] = i
        self._reps[k] = tuple(c[0] for c in cos)
        self._index[k] = tuple(idx)

    def reps(self, k: int) -> tuple[int, ...]:
        if k not in self._reps:
            self._build(k)
        return self._reps[k]

    def index(self, k: int) -> tuple[int, ...]:
        """index(k)[g] is the position of the coset gK."""
        if k not in self._index:
            self._build(k)
        return self._index[k]

    def act(self, k: int, g: int, i: int) -> int:
        return self.index(k)[self.lat.group.mul[g][self.reps(k)[i]]]

    def stabilizer(self, k: int, i: int) -> int:
        return self.lat.conj(self.reps(k)[i], k)


_COSETS: dict[int, Cosets] = {}


def cosets_of(lat: SubgroupLattice) -> Cosets:
    c = _COSETS.get(id(lat))
    if c is None or c.lat is not lat:
        c = _COSETS[id(lat)] = Cosets(lat)
    return c


class SpanCategory:
    """Hom sets and composition of the span category attached to a transfer system.

    Only subgroups of ``ts.top`` are objects; cosets are taken in the ambient
    group, so ``ts.top`` should be the whole group.
    """

    def __init__(self, ts: TransferSystem):
        if ts.top != ts.lattice.top:
            raise ValueError("span categories are built over the whole group")
        self.ts = ts
        self.lat = ts.lattice
        self.cos = cosets_of(self.lat)
        self._basis: dict[tuple[int, int], list[Span]] = {}
        self._pos: dict[tuple[int, int], dict[Span, int]] = {}
        self._comp: dict = {}

    def canonical(self, k: int, m: int, j: int, y: int, z: int) -> Span:
        """Canonical form of the triple (J, y in G/K, z in G/M)."""
        lat, cos = self.lat, self.cos
        r = cos.reps(m)[z]
        ri = lat.group.inv[r]
        j0 = lat.conj(ri, j)
        y0 = cos.act(k, ri, y)
        best = None
        for x in lat.elements(m):
            cand = (lat.conj(x, j0), cos.act(k, x, y0))
            if best is None or cand < best:
                best = cand
        return best

    def basis(self, k: int, l: int) -> list[Span]:
        """Basis of A(G/K, G/L), sorted."""
        key = (k, l)
        b = self._basis.get(key)
        if b is None:
            lat, cos = self.lat, self.cos
            found = set()
            nk = len(cos.reps(k))
            for j in self.ts.sources(l):
                for y in range(nk):
                    if lat.le(j, cos.stabilizer(k, y)):
                        found.add(self.canonical(k, l, j, y, 0))
            b = self._basis[key] = sorted(found)
            self._pos[key] = {s: i for i, s in enumerate(b)}
        return b

    def position(self, k: int, l: int, s: Span) -> int:
        self.basis(k, l)
        return self._pos[(k, l)][s]

    def dim(self, k: int, l: int) -> int:
        return len(self.basis(k, l))

    def identity(self, k: int) -> Span:
        return (k, 0)

    def res_span(self, l: int, k: int) -> Span:
        """G/L <- G/K = G/K, in A(G/L, G/K)."""
        return self.canonical(l, k, k, 0, 0)

    def tr_span(self, k: int, l: int) -> Span:
        """G/K = G/K -> G/L, in A(G/K, G/L)."""
        if not self.ts.rel(k, l):
            raise ValueError("transfer is not admissible")
        return self.canonical(k, l, k, 0, 0)

    def conj_span(self, g: int, l: int) -> Span:
        """G/L <- G/gLg^-1 = G/gLg^-1 with left leg x gLg^-1 -> x g L, in A(G/L, G/gLg^-1)."""
        gl = self.lat.conj(g, l)
        return self.canonical(l, gl, gl, self.cos.index(l)[g], 0)

    def compose(self, k: int, l: int, m: int, s: Span, t: Span) -> dict[Span, int]:
        """t after s, for s in A(G/K, G/L) and t in A(G/L, G/M)."""
        key = (k, l, m, s, t)
        hit = self._comp.get(key)
        if hit is not None:
            return hit
        lat, cos = self.lat, self.cos
        mul, inv = lat.group.mul, lat.group.inv
        j, ys = s
        jt, yt = t
        c = cos.reps(l)[yt]
        ci = inv[c]
        idx_t = cos.index(jt)
        seen = set()
        out: dict[Span, int] = {}
        jel = lat.elements(j)
        for a in lat.elements(l):
            b = mul[a][ci]  # b * yt = eL
            pb = idx_t[b]
            if pb in seen:
                continue
            for x in jel:
                seen.add(idx_t[mul[x][b]])
            u = lat.meet(j, lat.conj(b, jt))
            z = cos.index(m)[b]
            key2 = self.canonical(k, m, u, ys, z)
            out[key2] = out.get(key2, 0) + 1
        out = dict(sorted(out.items()))
        self._comp[key] = out
        return out

    def decompose(self, k: int, l: int, s: Span) -> tuple[int, int, int]:
        """Write s = tr_U^L . res_U . conj(a, K); returns (a, a K a^-1, U)."""
        u, y = s
        a = self.cos.reps(k)[y]
        return a, self.lat.conj(a, k), u

    @cached_property
    def objects(self) -> list[int]:
        return list(self.ts.members)


_CATS: dict = {}


def span_category(ts: TransferSystem) -> SpanCategory:
    key = (id(ts.lattice), ts.top, ts.up)
    cat = _CATS.get(key)
    if cat is None or cat.lat is not ts.lattice:
        if len(_CATS) > 256:
            _CATS.clear()
        cat = _CATS[key] = SpanCategory(ts)
    return cat
