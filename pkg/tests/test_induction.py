import pytest

from incmackey.groups import named_group
from incmackey.induction import (NotClassFunctor, class_restriction, coinduct_class,
                                 coinduction_formulas_agree, compare_coinduction, compare_induction,
                                 counit, family_of, frobenius_check, induct_class,
                                 normalizer_round_trip, restrict_to_normalizer, unit)
from incmackey.insep import partition
from incmackey.mackey import (burnside_mackey, is_isomorphism, is_morphism, is_valid_mackey,
                              represented_mackey, restrict_to_family, split)
from incmackey.transfer import enumerate_all, generate, parse_pair


def ts_of(name, *pairs):
    lat = named_group(name).lattice
    return generate(lat, [parse_pair(lat, p) for p in pairs])


def class_pieces(ts, M):
    for rep, S in split(M).summands.items():
        yield rep, S, class_restriction(S, rep)


def test_c6_induction_recovers_summand():
    ts = ts_of("cyclic:6", "C2>C6")
    for rep, S, R in class_pieces(ts, burnside_mackey(ts)):
        ind = induct_class(ts, rep, R)
        coind = coinduct_class(ts, rep, R)
        assert is_valid_mackey(ind.functor) and is_valid_mackey(coind.functor)
        assert is_isomorphism(ind.functor, S, counit(ts, rep, S, ind))
        assert is_isomorphism(S, coind.functor, unit(ts, rep, S, coind))
        assert compare_induction(ts, rep, R)
        assert compare_coinduction(ts, rep, R)
        assert coinduction_formulas_agree(ts, rep, R)


@pytest.mark.parametrize("name", ["symmetric:3", "klein", "cyclic:4", "quaternion"])
def test_frobenius_and_oracles(name):
    G = named_group(name)
    for ts in enumerate_all(G)[::4]:
        for M in (burnside_mackey(ts), represented_mackey(ts, 0)):
            for rep, S, R in class_pieces(ts, M):
                report = frobenius_check(ts, rep, S)
                assert report, report
                assert compare_induction(ts, rep, R)
                assert compare_coinduction(ts, rep, R)
                assert coinduction_formulas_agree(ts, rep, R)


def test_non_class_functor_rejected():
    ts = ts_of("cyclic:6", "C2>C6")
    lat = ts.lattice
    M = burnside_mackey(ts)
    with pytest.raises(NotClassFunctor):
        class_restriction(M, lat.top)
    with pytest.raises(NotClassFunctor):
        induct_class(ts, lat.top, restrict_to_family(M, lat.parse("C3")))


def test_family_of():
    ts = ts_of("symmetric:3", "C2.1>S3")
    lat = ts.lattice
    assert {lat.label(l) for l in family_of(ts, lat.parse("C2.2"))} == {"C1", "C2.1", "C2.2", "C2.3"}


def test_c8_weak_class_through_normalizer():
    ts = ts_of("cyclic:8", "C1>C8", "C2>C4")
    lat = ts.lattice
    top = lat.top
    assert {lat.label(k) for k in partition(ts).members(top)} == {"C2", "C4", "C8"}
    S = split(burnside_mackey(ts)).summands[top]
    D = restrict_to_normalizer(ts, top, S)
    assert D.normalizer == top and D.cosets == [0]
    assert {lat.label(k) for k in D.component} == {"C2", "C4", "C8"}
    assert normalizer_round_trip(ts, top, S)


@pytest.mark.parametrize("name", ["symmetric:3", "dihedral:8"])
def test_normalizer_round_trip(name):
    G = named_group(name)
    for ts in enumerate_all(G)[::11]:
        for rep, S, R in class_pieces(ts, burnside_mackey(ts)):
            assert normalizer_round_trip(ts, rep, R)


def test_unit_and_counit_are_morphisms_s3():
    ts = ts_of("symmetric:3", "C1>C2.1")
    for rep, S, R in class_pieces(ts, represented_mackey(ts, ts.lattice.parse("C2.1"))):
        ind, coind = induct_class(ts, rep, R), coinduct_class(ts, rep, R)
        assert is_morphism(ind.functor, S, counit(ts, rep, S, ind))
        assert is_morphism(S, coind.functor, unit(ts, rep, S, coind))
