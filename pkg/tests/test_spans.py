import itertools
import random

import pytest

from incmackey.groups import named_group
from incmackey.spans import SpanCategory, span_category
from incmackey.transfer import TransferSystem, enumerate_all
from oracles import as_frozen_pairs, brute_subgroups, conj_set, left_cosets


def brute_hom_dim(G, ts, k, l):
    """Count G-orbits of (J, y, z) directly on sets of elements."""
    lat = ts.lattice
    rel = as_frozen_pairs(ts)
    subs = brute_subgroups(G)
    ke, le = frozenset(lat.elements(k)), frozenset(lat.elements(l))
    ck, cl = left_cosets(G, ke), left_cosets(G, le)

    def stab(c):
        return frozenset(g for g in range(G.order) if frozenset(G.mul[g][x] for x in c) == c)

    def act(g, c):
        return frozenset(G.mul[g][x] for x in c)

    triples = set()
    for y in ck:
        for z in cl:
            sz = stab(z)
            common = stab(y) & sz
            for j in subs:
                if j <= common and (j == sz or (j, sz) in rel):
                    triples.add((j, y, z))
    orbits = 0
    while triples:
        j, y, z = triples.pop()
        orbits += 1
        for g in range(G.order):
            triples.discard((conj_set(G, g, j), act(g, y), act(g, z)))
    return orbits


@pytest.mark.parametrize("name", ["cyclic:4", "symmetric:3", "klein"])
def test_hom_dimensions_match_brute_force(name):
    G = named_group(name)
    for ts in enumerate_all(G):
        cat = SpanCategory(ts)
        lat = ts.lattice
        for k in range(lat.n):
            for l in range(lat.n):
                assert cat.dim(k, l) == brute_hom_dim(G, ts, k, l)


@pytest.mark.parametrize("name", ["symmetric:3", "dihedral:8", "quaternion"])
def test_identity_and_associativity(name):
    G = named_group(name)
    rng = random.Random(7)
    lat = G.lattice
    for ts in rng.sample(enumerate_all(G), 4):
        cat = span_category(ts)
        for _ in range(60):
            k, l, m, n = (rng.randrange(lat.n) for _ in range(4))
            if not (cat.basis(k, l) and cat.basis(l, m) and cat.basis(m, n)):
                continue
            s = rng.choice(cat.basis(k, l))
            assert cat.compose(k, k, l, cat.identity(k), s) == {s: 1}
            assert cat.compose(k, l, l, s, cat.identity(l)) == {s: 1}
            t = rng.choice(cat.basis(l, m))
            u = rng.choice(cat.basis(m, n))
            left: dict = {}
            for st, c in cat.compose(k, l, m, s, t).items():
                for v, d in cat.compose(k, m, n, st, u).items():
                    left[v] = left.get(v, 0) + c * d
            right: dict = {}
            for tu, c in cat.compose(l, m, n, t, u).items():
                for v, d in cat.compose(k, l, n, s, tu).items():
                    right[v] = right.get(v, 0) + c * d
            assert {v: c for v, c in left.items() if c} == {v: c for v, c in right.items() if c}


def test_restriction_then_transfer_is_double_coset_formula():
    lat = named_group("symmetric:3").lattice
    cat = SpanCategory(TransferSystem.complete(lat))
    c2, s3 = lat.parse("C2.1"), lat.top
    tr = cat.tr_span(c2, s3)
    res = cat.res_span(s3, c2)
    # tr then res: S3/C2 restricted to C2 has two orbits
    out = cat.compose(c2, s3, c2, tr, res)
    assert sum(out.values()) == 2 and len(out) == 2


def test_decompose_round_trip():
    lat = named_group("dihedral:8").lattice
    ts = TransferSystem.complete(lat)
    cat = SpanCategory(ts)
    for k, l in itertools.product(range(lat.n), repeat=2):
        for s in cat.basis(k, l):
            a, ak, u = cat.decompose(k, l, s)
            c = cat.conj_span(a, k)
            r = cat.res_span(ak, u)
            t = cat.tr_span(u, l)
            acc = {c: 1}
            for mid, nxt in ((ak, (u, r)), (u, (l, t))):
                new: dict = {}
                for x, m in acc.items():
                    tgt, span = nxt
                    for y, d in cat.compose(k, mid, tgt, x, span).items():
                        new[y] = new.get(y, 0) + m * d
                acc = new
            assert acc == {s: 1}


def test_rejects_inadmissible_transfer_and_subtop():
    lat = named_group("cyclic:6").lattice
    cat = SpanCategory(TransferSystem.trivial(lat))
    with pytest.raises(ValueError):
        cat.tr_span(0, lat.top)
    with pytest.raises(ValueError):
        SpanCategory(TransferSystem.trivial(lat, lat.parse("C3")))
