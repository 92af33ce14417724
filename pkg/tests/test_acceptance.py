"""Acceptance criteria 1-8, one test each; see the summary section printed at the end."""

import subprocess
import sys
import time
from dataclasses import dataclass, field

import pytest

from incmackey.burnside import (BurnsideElement, admissible_basis, classical_decomposition, idempotent,
                                idempotent_oracle, restrict_element)
from incmackey.groups import named_group
from incmackey.induction import (class_restriction, compare_coinduction, compare_induction, counit,
                                 frobenius_check, induct_class)
from incmackey.insep import (above_set, internal_transfers, is_relative_family, mark_partition,
                             partition, tombstone_check)
from incmackey.mackey import act, burnside_mackey, is_isomorphism, represented_mackey, split
from incmackey.transfer import (enumerate_all, generate, is_disklike, maximal_disklike, parse_pair,
                                validate)
from oracles import as_frozen_pairs, powerset_transfer_systems

SWEEP_GROUPS = [f"cyclic:{n}" for n in range(2, 17)] + [
    "klein", "symmetric:3", "dihedral:8", "quaternion", "dihedral:12"]
SMALL_GROUPS = [f"cyclic:{n}" for n in range(1, 9)] + [
    "klein", "symmetric:3", "dihedral:8", "quaternion"]


def ts_of(name, *pairs):
    lat = named_group(name).lattice
    return generate(lat, [parse_pair(lat, p) for p in pairs])


def fmt_by_label(ts, d):
    lab = ts.lattice.label
    return {lab(k): v for k, v in d.items()}


def test_criterion_1_c6_golden(criterion):
    with criterion(1, "C6 golden reproduction", budget=1.0):
        ts = ts_of("cyclic:6", "C2>C6")
        lat = ts.lattice
        c3, c6 = lat.parse("C3"), lat.parse("C6")
        es = {lat.label(r): idempotent(ts, r) for r in partition(ts).classes}
        assert {k: e.format() for k, e in es.items()} == {
            "C2": "1/3*C6/C2", "C6": "C6/C6 - 1/3*C6/C2"}
        images = {k: sorted(lat.label(c) for c in classical_decomposition(ts, e))
                  for k, e in es.items()}
        assert images == {"C2": ["C1", "C2"], "C6": ["C3", "C6"]}
        assert restrict_element(es["C6"], c3).format() == "C3/C3 - 1/3*C3/C1"
        assert restrict_element(es["C2"], c3).format() == "1/3*C3/C1"
        M = burnside_mackey(ts)
        S = split(M)
        assert S.reassembly_ok()
        dims = {lat.label(r): fmt_by_label(ts, s.dims) for r, s in S.summands.items()}
        assert dims == {"C2": {"C1": 1, "C2": 1, "C3": 1, "C6": 1},
                        "C6": {"C1": 0, "C2": 0, "C3": 1, "C6": 1}}
        # the C6 summand is spanned by e[6] at C6 and by its restriction at C3
        for level, elem in ((c6, es["C6"]), (c3, restrict_element(es["C6"], c3))):
            basis = S.inclusions[c6][level]
            vec = [elem.coeffs.get(b, 0) for b in admissible_basis(ts, level)]
            col = basis.column(0)
            ratio = next(v / c for v, c in zip(vec, col) if c)
            assert [c * ratio for c in col] == vec


def test_criterion_2_c8_golden(criterion):
    with criterion(2, "C8 golden reproduction", budget=1.0):
        ts = ts_of("cyclic:8", "C2>C4", "C2>C8")
        lat = ts.lattice
        e2 = idempotent(ts, lat.parse("C2"))
        e8 = idempotent(ts, lat.top)
        assert e2.format() == "1/4*C8/C2"
        assert e8.format() == "C8/C8 - 1/4*C8/C2"
        assert restrict_element(e8, lat.parse("C4")).format() == "C4/C4 - 1/2*C4/C2"
        assert restrict_element(e8, lat.parse("C2")).is_zero()
        assert restrict_element(e8, lat.parse("C1")).is_zero()


def test_criterion_3_enumeration_counts(criterion):
    with criterion(3, "enumeration counts with powerset oracle", budget=30.0):
        for name, count in (("cyclic:2", 2), ("cyclic:4", 5), ("cyclic:8", 14), ("cyclic:6", 10)):
            G = named_group(name)
            systems = enumerate_all(G)
            assert len(systems) == count, name
            assert all(validate(t) == [] for t in systems)
            assert {as_frozen_pairs(t) for t in systems} == powerset_transfer_systems(G)
        c6 = enumerate_all(named_group("cyclic:6"))
        assert sum(map(is_disklike, c6)) == 7


@dataclass
class Sweep:
    elapsed: float = 0.0
    systems: int = 0
    idempotent_failures: list = field(default_factory=list)
    partition_failures: list = field(default_factory=list)
    disklike_failures: list = field(default_factory=list)


@pytest.fixture(scope="module")
def sweep():
    out = Sweep()
    start = time.perf_counter()
    for name in SWEEP_GROUPS:
        G = named_group(name)
        lat = G.lattice
        for ts in enumerate_all(G):
            out.systems += 1
            tag = (name, tuple(ts.pairs()))
            part = partition(ts)
            es = {r: idempotent(ts, r) for r in part.classes}
            one = BurnsideElement.one(lat, ts.top)
            zero = BurnsideElement.zero(lat, ts.top)
            total = zero
            for r, e in es.items():
                if e != idempotent_oracle(ts, r):
                    out.idempotent_failures.append((tag, r, "oracle"))
                total = total + e
            if total != one:
                out.idempotent_failures.append((tag, None, "sum"))
            reps = list(es)
            for i, a in enumerate(reps):
                for b in reps[i:]:
                    if es[a] * es[b] != (es[a] if a == b else zero):
                        out.idempotent_failures.append((tag, (a, b), "orthogonality"))
            classes = part.as_sets()
            if classes != mark_partition(ts):
                out.partition_failures.append((tag, "marks"))
            if classes != partition(maximal_disklike(ts)).as_sets():
                out.partition_failures.append((tag, "disk-like core"))
            for r in part.classes:
                if not is_relative_family(ts, r):
                    out.partition_failures.append((tag, r, "relative family"))
                if not tombstone_check(ts, r):
                    out.partition_failures.append((tag, r, "tombstone"))
            if is_disklike(ts):
                for r in part.classes:
                    if internal_transfers(ts, r):
                        out.disklike_failures.append((tag, r))
    out.elapsed = time.perf_counter() - start
    return out


def test_criterion_4_idempotent_sweep(criterion, sweep):
    with criterion(4, f"idempotent cross-oracle on {sweep.systems} systems", budget=300.0,
                   extra=sweep.elapsed):
        assert sweep.systems == sum(len(enumerate_all(named_group(n))) for n in SWEEP_GROUPS)
        assert sweep.idempotent_failures == []


def test_criterion_5_partitions(criterion, sweep):
    with criterion(5, "hull, mark and disk-like-core partitions agree; class checks"):
        assert sweep.partition_failures == []


def test_criterion_6_disklike(criterion, sweep):
    with criterion(6, "no internal transfers when disk-like; C8 example"):
        assert sweep.disklike_failures == []
        ts = ts_of("cyclic:8", "C1>C2", "C1>C4", "C1>C8", "C2>C4")
        lat = ts.lattice
        found = {lat.label(r): [(lat.label(j), lat.label(k)) for j, k in internal_transfers(ts, r)]
                 for r in partition(ts).classes}
        assert found["C8"] == [("C2", "C4")]
        assert all(not v for r, v in found.items() if r != "C8")


def represented_choices(lat):
    """Up to three subgroup class reps: the trivial group, the whole group, and a middle one."""
    reps = sorted({lat.class_rep(k) for k in range(lat.n)})
    picks = [reps[0], reps[-1]]
    middle = [r for r in reps if r not in picks]
    if middle:
        picks.append(middle[len(middle) // 2])
    return sorted(set(picks))


def check_functor(ts, M):
    """Properties (a)-(f) for one functor; returns a list of failure descriptions."""
    bad = []
    S = split(M)
    for l in M.levels:
        if sum(s.dim(l) for s in S.summands.values()) != M.dim(l):
            bad.append(("a", l))
    for rep, summand in S.summands.items():
        above = set(above_set(ts, rep))
        if any(summand.dim(l) for l in summand.levels if l not in above):
            bad.append(("b", rep))
        if not all(m.is_identity() for m in act(idempotent(ts, rep), summand).values()):
            bad.append(("c", rep))
        R = class_restriction(summand, rep)
        ind = induct_class(ts, rep, R)
        if not is_isomorphism(ind.functor, summand, counit(ts, rep, summand, ind)):
            bad.append(("d", rep))
        if not frobenius_check(ts, rep, summand):
            bad.append(("e", rep))
        if not (compare_induction(ts, rep, R) and compare_coinduction(ts, rep, R)):
            bad.append(("f", rep))
    return bad


def test_criterion_7_mackey_sweep(criterion):
    with criterion(7, "splitting, induction and Frobenius on groups of order <= 8", budget=600.0):
        failures = []
        functors = 0
        for name in SMALL_GROUPS:
            G = named_group(name)
            lat = G.lattice
            ks = represented_choices(lat)
            assert len(ks) >= min(3, len({lat.class_rep(k) for k in range(lat.n)}))
            for ts in enumerate_all(G):
                Ms = [burnside_mackey(ts)] + [represented_mackey(ts, k) for k in ks]
                for M in Ms:
                    functors += 1
                    failures.extend((name, tuple(ts.pairs()), M.name, b) for b in check_functor(ts, M))
        assert functors > 0
        assert failures == []


def test_criterion_8_cli_determinism(criterion, tmp_path):
    with criterion(8, "worked-example command byte-identical across two runs"):
        cmd = [sys.executable, "-m", "incmackey.cli", "paper-examples"]
        first = subprocess.run(cmd, capture_output=True, cwd=tmp_path)
        second = subprocess.run(cmd, capture_output=True, cwd=tmp_path)
        assert first.returncode == 0 and second.returncode == 0, first.stderr.decode()
        assert first.stdout == second.stdout
        assert b"FAIL" not in first.stdout
        first_json = subprocess.run(cmd + ["--json"], capture_output=True, cwd=tmp_path)
        second_json = subprocess.run(cmd + ["--json"], capture_output=True, cwd=tmp_path)
        assert first_json.stdout == second_json.stdout and first_json.returncode == 0
