"""Two C8 systems: one whose classes are cut out cleanly, one with a transfer inside a class.

Run with ``python3 demos/c8_walkthrough.py``.
"""

from incmackey.burnside import idempotent, restrict_element
from incmackey.groups import named_group
from incmackey.induction import class_restriction, frobenius_check, normalizer_round_trip
from incmackey.insep import internal_transfers, partition
from incmackey.mackey import burnside_mackey, split
from incmackey.transfer import generate, is_disklike, maximal_disklike, parse_pair


def system(lat, *pairs):
    return generate(lat, [parse_pair(lat, p) for p in pairs])


def main():
    lat = named_group("cyclic:8").lattice
    lab = lat.label

    ts = system(lat, "C2>C4", "C2>C8")
    e8 = idempotent(ts, lat.top)
    print("system:", ts)
    print("e[C8] =", e8)
    for l in reversed(ts.members):
        print(f"  restricted to {lab(l)}: {restrict_element(e8, l)}")

    weak = system(lat, "C1>C8", "C2>C4")
    print("\nsystem:", weak, " disk-like:", is_disklike(weak))
    print("largest disk-like subsystem:", maximal_disklike(weak))
    for rep, members in partition(weak).classes.items():
        inside = [f"{lab(j)}>{lab(k)}" for j, k in internal_transfers(weak, rep)]
        print(f"  class [{lab(rep)}] = {{{', '.join(lab(m) for m in members)}}}; "
              f"transfers inside: {', '.join(inside) or 'none'}")

    S = split(burnside_mackey(weak))
    for rep, summand in S.summands.items():
        report = frobenius_check(weak, rep, summand)
        R = class_restriction(summand, rep)
        print(f"  e[{lab(rep)}] summand", {lab(l): summand.dim(l) for l in reversed(summand.levels)},
              "| Frobenius ok:", bool(report),
              "| rebuilt from normalizer:", normalizer_round_trip(weak, rep, R))


if __name__ == "__main__":
    main()
