import json

import pytest

from incmackey.groups import GroupTooLarge, named_group
from incmackey.transfer import (PairNotNested, TransferSystem, admissible_to_top, closure_added,
                                enumerate_all, generate, is_disklike, is_valid, load_system,
                                maximal_disklike, minimal_admissible, mobius, pair_orbits,
                                restrict_to_subgroup, system_to_dot, system_to_json, validate)
from oracles import (as_frozen_pairs, chain_mobius, horn_transfer_systems,
                     powerset_transfer_systems)


def ts_of(name, *pairs):
    lat = named_group(name).lattice
    return generate(lat, [(lat.parse(a), lat.parse(b)) for a, b in (p.split(">") for p in pairs)])


def labels(ts):
    lat = ts.lattice
    return {f"{lat.label(k)}>{lat.label(h)}" for k, h in ts.pairs()}


C8_WEAK = ("C1>C2", "C1>C4", "C1>C8", "C2>C4")


def test_extreme_systems_are_valid():
    lat = named_group("dihedral:8").lattice
    assert validate(TransferSystem.trivial(lat)) == []
    assert validate(TransferSystem.complete(lat)) == []


def test_restriction_violation_is_witnessed():
    lat = named_group("cyclic:6").lattice
    raw = TransferSystem.from_pairs(lat, [(1, 3)])
    problems = validate(raw)
    assert [(v.kind, v.witness) for v in problems] == [("restriction", (1, 3, 2))]


def test_other_violations():
    lat = named_group("symmetric:3").lattice
    raw = TransferSystem.from_pairs(lat, [(1, 5)])  # one reflection up to S3, not its conjugates
    kinds = {v.kind for v in validate(raw)}
    assert "conjugation" in kinds
    raw = TransferSystem.from_pairs(lat, [(0, 4), (4, 5)])
    assert "transitivity" in {v.kind for v in validate(raw)}
    assert "not-nested" in {v.kind for v in validate(TransferSystem.from_pairs(lat, [(1, 2)]))}
    assert "reflexivity" in {v.kind for v in validate(TransferSystem.from_pairs(lat, [], reflexive=False))}


def test_generate():
    lat = named_group("cyclic:6").lattice
    assert generate(lat, []) == TransferSystem.trivial(lat)
    ts = ts_of("cyclic:6", "C2>C6")
    assert labels(ts) == {"C2>C6", "C1>C3"}
    assert closure_added([(1, 3)], ts) == [(0, 2)]
    c8 = ts_of("cyclic:8", "C2>C4", "C2>C8")
    assert labels(c8) == {"C2>C4", "C2>C8"} and is_valid(c8)
    with pytest.raises(PairNotNested):
        generate(named_group("symmetric:3").lattice, [(1, 2)])


def test_restrict_to_subgroup():
    ts = ts_of("cyclic:8", "C2>C4", "C2>C8")
    lat = ts.lattice
    assert restrict_to_subgroup(ts, lat.top) == ts
    assert restrict_to_subgroup(ts, 0).pairs() == []
    r = restrict_to_subgroup(ts, lat.parse("C4"))
    assert r.pairs() == [(1, 2)] and is_valid(r)


@pytest.mark.parametrize("name, count", [("cyclic:2", 2), ("cyclic:3", 2), ("cyclic:4", 5),
                                         ("cyclic:9", 5), ("cyclic:6", 10), ("cyclic:8", 14)])
def test_enumeration_counts_match_powerset(name, count):
    G = named_group(name)
    systems = enumerate_all(G)
    assert len(systems) == count
    assert {as_frozen_pairs(t) for t in systems} == powerset_transfer_systems(G)


@pytest.mark.parametrize("name", ["klein", "symmetric:3", "quaternion", "dihedral:8", "cyclic:12"])
def test_enumeration_matches_horn_search(name):
    G = named_group(name)
    systems = enumerate_all(G)
    assert all(is_valid(t) for t in systems)
    assert {as_frozen_pairs(t) for t in systems} == horn_transfer_systems(G)
    assert len(set(systems)) == len(systems)


def test_enumeration_order_and_cap():
    systems = enumerate_all(named_group("cyclic:6"))
    keys = [t.sort_key() for t in systems]
    assert keys == sorted(keys)
    assert systems[0].pairs() == [] and systems[-1].is_complete()
    with pytest.raises(GroupTooLarge):
        enumerate_all(named_group("cyclic:18"))


def test_pair_orbits_cover_all_pairs():
    lat = named_group("dihedral:8").lattice
    orbits = pair_orbits(lat)
    flat = [p for o in orbits for p in o]
    assert len(flat) == len(set(flat)) == len(TransferSystem.complete(lat).pairs())


def test_disklike():
    lat = named_group("cyclic:8").lattice
    assert is_disklike(TransferSystem.complete(lat))
    assert is_disklike(TransferSystem.trivial(lat))
    weak = ts_of("cyclic:8", *C8_WEAK)
    assert not is_disklike(weak)
    assert labels(maximal_disklike(weak)) == {"C1>C2", "C1>C4", "C1>C8"}
    assert maximal_disklike(ts_of("cyclic:8", "C2>C4")).pairs() == []
    d = ts_of("cyclic:6", "C2>C6")
    assert maximal_disklike(d) == d
    assert sum(map(is_disklike, enumerate_all(named_group("cyclic:6")))) == 7


@pytest.mark.parametrize("name", ["cyclic:6", "cyclic:8", "symmetric:3", "klein", "quaternion"])
def test_mobius_matches_chain_count(name):
    for ts in enumerate_all(named_group(name)):
        mu = mobius(ts)
        for (k, h), v in mu.items():
            assert v == chain_mobius(ts, k, h)


def test_mobius_examples():
    weak = ts_of("cyclic:8", *C8_WEAK)
    mu = mobius(weak)
    assert mu[(0, 0)] == 1
    assert mu[(0, 3)] == -1
    assert mu[(1, 2)] == -1


def test_admissible_to_top():
    ts = ts_of("cyclic:6", "C2>C6")
    assert admissible_to_top(ts) == [1, 3]
    lat = ts.lattice
    assert admissible_to_top(TransferSystem.complete(lat)) == [0, 1, 2, 3]
    assert minimal_admissible(ts) == 1
    s3 = named_group("symmetric:3").lattice
    full = TransferSystem.complete(s3)
    assert minimal_admissible(full) == 0


def test_json_and_dot(tmp_path):
    ts = ts_of("cyclic:6", "C2>C6")
    data = system_to_json(ts, "cyclic:6")
    assert data == {"group": "cyclic:6", "pairs": [[0, 2], [1, 3]]}
    path = tmp_path / "o.json"
    path.write_text(json.dumps({"group": "cyclic:6", "pairs": [["C2", "C6"]]}))
    loaded, added = load_system(str(path))
    assert loaded.pairs() == ts.pairs() and added == [(0, 2)]
    dot = system_to_dot(ts)
    assert dot.startswith("digraph") and "n1 -> n3 [penwidth=2]" in dot
