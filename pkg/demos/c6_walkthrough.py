"""C6 with the transfer C2 -> C6: closure, classes, idempotents and the split Burnside functor.

Run with ``python3 demos/c6_walkthrough.py``.
"""

from incmackey.burnside import classical_decomposition, idempotent, restrict_element
from incmackey.groups import named_group
from incmackey.insep import partition
from incmackey.mackey import burnside_mackey, split
from incmackey.transfer import closure_added, generate, parse_pair


def main():
    lat = named_group("cyclic:6").lattice
    lab = lat.label
    seeds = [parse_pair(lat, "C2>C6")]
    ts = generate(lat, seeds)
    print("transfers:", ts)
    print("forced by restriction:", [f"{lab(k)}>{lab(h)}" for k, h in closure_added(seeds, ts)])

    part = partition(ts)
    for rep, members in part.classes.items():
        e = idempotent(ts, rep)
        classical = " + ".join(f"e_{lab(c)}" for c in sorted(classical_decomposition(ts, e)))
        print(f"\nclass [{lab(rep)}] = {{{', '.join(lab(m) for m in members)}}}")
        print(f"  e = {e}   (complete ring: {classical})")
        for l in reversed(ts.members):
            print(f"  at {lab(l)}: {restrict_element(e, l)}")

    M = burnside_mackey(ts)
    S = split(M)
    print("\nBurnside functor dims:", {lab(l): M.dim(l) for l in reversed(M.levels)})
    for rep, summand in S.summands.items():
        print(f"  e[{lab(rep)}] summand:", {lab(l): summand.dim(l) for l in reversed(summand.levels)})
    print("summands reassemble:", S.reassembly_ok())


if __name__ == "__main__":
    main()
