import pytest

from incmackey.groups import named_group
from incmackey.insep import (NotAbove, NotAClass, above_set, hull, internal_transfers, is_above,
                             is_relative_family, mark_partition, partition, sub_hull_component,
                             tombstone_check, top_set, top_set_full_scan)
from incmackey.transfer import TransferSystem, enumerate_all, generate, is_disklike, parse_pair


def ts_of(name, *pairs):
    lat = named_group(name).lattice
    return generate(lat, [parse_pair(lat, p) for p in pairs])


def by_label(ts, rep_label):
    return ts.lattice.parse(rep_label)


def label_sets(ts, ids):
    return {ts.lattice.label(i) for i in ids}


def test_hull_examples():
    ts = ts_of("cyclic:6", "C2>C6")
    lat = ts.lattice
    p = lat.parse
    assert hull(ts, p("C1")) == p("C2")
    assert hull(ts, p("C2")) == p("C2")
    assert hull(ts, p("C3")) == p("C6")
    full = TransferSystem.complete(lat)
    assert all(hull(full, j) == j for j in range(lat.n))
    triv = TransferSystem.trivial(lat)
    assert all(hull(triv, j) == lat.top for j in range(lat.n))


def test_c6_partition():
    ts = ts_of("cyclic:6", "C2>C6")
    part = partition(ts)
    classes = {ts.lattice.label(r): label_sets(ts, m) for r, m in part.classes.items()}
    assert classes == {"C2": {"C1", "C2"}, "C6": {"C3", "C6"}}
    assert part.same_class(0, 1) and not part.same_class(0, 2)
    with pytest.raises(NotAClass):
        part.members(0)


def test_c8_partition():
    ts = ts_of("cyclic:8", "C2>C4", "C2>C8")
    part = partition(ts)
    classes = {ts.lattice.label(r): label_sets(ts, m) for r, m in part.classes.items()}
    assert classes == {"C2": {"C1", "C2"}, "C8": {"C4", "C8"}}


def test_s3_conjugate_reps():
    lat = named_group("symmetric:3").lattice
    part = partition(TransferSystem.complete(lat))
    assert len(part.classes) == 4
    assert part.label[lat.parse("C2.3")] == lat.parse("C2.1")
    assert set(part.members(lat.parse("C2.1"))) == {lat.parse(x) for x in ("C2.1", "C2.2", "C2.3")}


@pytest.mark.parametrize("name", ["cyclic:6", "cyclic:8", "symmetric:3", "klein", "quaternion", "cyclic:12"])
def test_partition_equalities_and_class_checks(name):
    for ts in enumerate_all(named_group(name)):
        part = partition(ts)
        assert part.as_sets() == mark_partition(ts)
        for rep in part.classes:
            assert is_relative_family(ts, rep)
            assert tombstone_check(ts, rep)


def test_above_sets():
    ts = ts_of("cyclic:6", "C2>C6")
    lat = ts.lattice
    assert label_sets(ts, above_set(ts, lat.parse("C2"))) == {"C1", "C2", "C3", "C6"}
    assert label_sets(ts, above_set(ts, lat.parse("C6"))) == {"C3", "C6"}
    assert not is_above(ts, lat.parse("C2"), lat.parse("C6"))


@pytest.mark.parametrize("name", ["symmetric:3", "dihedral:8", "quaternion", "cyclic:8"])
def test_top_set_matches_full_scan(name):
    G = named_group(name)
    for ts in enumerate_all(G)[::7]:
        for rep in partition(ts).classes:
            for l in above_set(ts, rep):
                t = top_set(ts, l, rep)
                assert set(t.members) == top_set_full_scan(ts, l, rep)
                assert sorted(x for o in t.orbits for x in o) == list(t.members)


def test_top_set_orbits_in_s3():
    lat = named_group("symmetric:3").lattice
    ts = TransferSystem.complete(lat)
    t = top_set(ts, lat.top, lat.parse("C2.1"))
    assert len(t.orbits) == 1 and len(t.members) == 3
    with pytest.raises(NotAbove):
        top_set(ts, lat.parse("C3"), lat.parse("C2.1"))


def test_sub_hull_component():
    ts = ts_of("cyclic:8", "C1>C8", "C2>C4")
    lat = ts.lattice
    assert label_sets(ts, sub_hull_component(ts, lat.top)) == {"C2", "C4", "C8"}


def test_tombstone_rejects_non_hull():
    ts = ts_of("cyclic:6", "C2>C6")
    assert not tombstone_check(ts, ts.lattice.parse("C3"))


def test_internal_transfers():
    ts = ts_of("cyclic:8", "C1>C2", "C1>C4", "C1>C8", "C2>C4")
    lat = ts.lattice
    found = {(lat.label(j), lat.label(k)) for r in partition(ts).classes for j, k in internal_transfers(ts, r)}
    assert found == {("C2", "C4")}


@pytest.mark.parametrize("name", ["cyclic:6", "cyclic:8", "klein", "symmetric:3", "quaternion"])
def test_disklike_has_no_internal_transfers(name):
    for ts in enumerate_all(named_group(name)):
        if is_disklike(ts):
            assert all(not internal_transfers(ts, r) for r in partition(ts).classes)
