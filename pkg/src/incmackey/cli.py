"""Command-line entry point.

Exit codes: 0 success, 1 verification mismatch, 2 input error, 3 theory
precondition violated.  All output is deterministic: JSON is written with
sorted keys and rationals as ``p/q`` strings.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from pathlib import Path

from .burnside import NotAdmissible, classical_decomposition, idempotent, idempotent_oracle, marks
from .groups import GroupError, load_group
from .insep import internal_transfers, partition
from .mackey import (InadmissibleAction, MackeyFunctor, burnside_mackey, mackey_from_json,
                     mackey_to_json, split, to_dot, validate_mackey)
from .transfer import (TransferSystem, closure_added, enumerate_all, generate, is_disklike,
                       maximal_disklike, parse_pair, system_to_dot, validate)
from . import worked_examples

OK, MISMATCH, INPUT_ERROR, PRECONDITION = 0, 1, 2, 3


class InputError(Exception):
    pass


def canonical_json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def digest(obj) -> str:
    """Content address: SHA-256 of the compact canonical serialization."""
    blob = json.dumps(obj, sort_keys=True, separators=(",", ":")).encode()
    return hashlib.sha256(blob).hexdigest()


class Workspace:
    """Loaded objects and derived results, keyed by the hash of their canonical form."""

    def __init__(self):
        self.group = None
        self.systems: dict[str, str] = {}  # name -> digest
        self.mackeys: dict[str, str] = {}
        self._objects: dict[str, object] = {}
        self._results: dict[tuple[str, str], object] = {}

    def _store(self, canonical_form, obj) -> str:
        key = digest(canonical_form)
        self._objects.setdefault(key, obj)
        return key

    def add_system(self, name: str, ts: TransferSystem) -> str:
        form = {"group": [list(r) for r in ts.lattice.group.mul], "top": ts.top, "pairs": ts.pairs()}
        key = self.systems[name] = self._store(form, ts)
        return key

    def add_mackey(self, name: str, M: MackeyFunctor) -> str:
        form = {"group": [list(r) for r in M.lattice.group.mul],
                "functor": mackey_to_json(M, ts_ref=M.ts.pairs(), all_conj=True)}
        key = self.mackeys[name] = self._store(form, M)
        return key

    def get(self, key: str):
        return self._objects[key]

    def cached(self, kind: str, key: str, compute):
        slot = (kind, key)
        if slot not in self._results:
            self._results[slot] = compute()
        return self._results[slot]


# ---------------------------------------------------------------------------
# loading


def _group(args):
    ref = getattr(args, "group", None) or getattr(args, "name", None) or getattr(args, "file", None)
    if ref is None:
        raise InputError("no group given; use --group NAME or a JSON file")
    return load_group(ref), ref


def _split_pairs(values):
    out = []
    for v in values or ():
        out.extend(p.strip() for p in v.split(",") if p.strip())
    return out


def _read_json(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from None


def _system(args, raw=False):
    """The transfer system from --system or --group/--pairs, plus its seeds and group ref."""
    if getattr(args, "system", None):
        data = _read_json(args.system)
        if "group" not in data:
            raise InputError("transfer system file needs a 'group'")
        G = load_group(data["group"])
        ref = data["group"]
        items = data.get("pairs", [])
    else:
        G, ref = _group(args)
        items = _split_pairs(getattr(args, "pairs", None))
    lat = G.lattice
    seeds = [parse_pair(lat, p) for p in items]
    seeds = [p for p in seeds if p[0] != p[1]]
    if raw:
        return TransferSystem.from_pairs(lat, seeds), seeds, ref
    return generate(lat, seeds), seeds, ref


def _labels(lat, ids):
    return [lat.label(i) for i in ids]


def _pair_labels(lat, pairs):
    return [f"{lat.label(k)}>{lat.label(h)}" for k, h in pairs]


def _emit(args, data, text_lines):
    if args.json:
        sys.stdout.write(canonical_json(data))
    else:
        sys.stdout.write("".join(line + "\n" for line in text_lines))


def _write(path, text):
    Path(path).parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w") as fh:
        fh.write(text)


# ---------------------------------------------------------------------------
# commands


def cmd_group(args) -> int:
    G, _ = _group(args)
    lat = G.lattice
    subs = []
    for h in range(lat.n):
        subs.append({
            "id": h, "label": lat.label(h), "order": lat.order(h),
            "elements": [G.elname(x) for x in lat.elements(h)],
            "class": lat.label(lat.class_rep(h)),
            "normalizer": lat.label(lat.normalizer_in(h)),
        })
    classes = [_labels(lat, lat.conjugates(r)) for r in lat.class_reps]
    data = {"name": lat.label(lat.top), "order": G.order, "abelian": G.is_abelian(),
            "subgroups": subs, "classes": classes}
    lines = [f"group {data['name']}  order {G.order}",
             f"{lat.n} subgroups in {len(classes)} conjugacy classes",
             f"{'id':>3}  {'label':<8}{'order':>5}  {'class':<8}{'normalizer':<12}elements"]
    for s in subs:
        lines.append(f"{s['id']:>3}  {s['label']:<8}{s['order']:>5}  {s['class']:<8}"
                     f"{s['normalizer']:<12}{' '.join(s['elements'])}")
    _emit(args, data, lines)
    return OK


def cmd_trsys(args) -> int:
    return {"validate": _trsys_validate, "generate": _trsys_generate,
            "enumerate": _trsys_enumerate, "disklike": _trsys_disklike}[args.action](args)


def _trsys_validate(args) -> int:
    ts, _, _ = _system(args, raw=True)
    lat = ts.lattice
    problems = validate(ts)
    data = {"valid": not problems,
            "violations": [{"kind": v.kind, "witness": list(v.witness)} for v in problems]}
    lines = ["valid" if not problems else f"invalid: {len(problems)} violation(s)"]
    for v in problems:
        lines.append(f"  {v.kind}: {_witness(lat, v)}")
    _emit(args, data, lines)
    if args.dot:
        _write(args.dot, system_to_dot(ts))
    return OK if not problems else INPUT_ERROR


def _witness(lat, v) -> str:
    ids = list(v.witness)
    if v.kind == "conjugation":
        *ids, g = ids
        return " ".join(lat.label(i) for i in ids) + f" by {lat.group.elname(g)}"
    return " ".join(lat.label(i) for i in ids)


def _trsys_generate(args) -> int:
    ts, seeds, ref = _system(args)
    lat = ts.lattice
    added = closure_added(seeds, ts)
    data = {"group": ref, "pairs": [list(p) for p in ts.pairs()],
            "labels": _pair_labels(lat, ts.pairs()), "added": _pair_labels(lat, added)}
    lines = ["pairs: " + (", ".join(_pair_labels(lat, ts.pairs())) or "(none)")]
    lines.append("added by closure: " + (", ".join(_pair_labels(lat, added)) or "(none)"))
    _emit(args, data, lines)
    if args.dot:
        _write(args.dot, system_to_dot(ts))
    return OK


def _trsys_enumerate(args) -> int:
    G, ref = _group(args)
    lat = G.lattice
    systems = enumerate_all(G)
    rows = [{"pairs": _pair_labels(lat, s.pairs()), "disklike": is_disklike(s)} for s in systems]
    data = {"group": ref, "count": len(systems), "disklike": sum(r["disklike"] for r in rows),
            "systems": rows}
    lines = [f"{len(systems)} transfer systems ({data['disklike']} disk-like)"]
    for i, r in enumerate(rows, 1):
        flag = "d" if r["disklike"] else " "
        lines.append(f"{i:>4} {flag} {', '.join(r['pairs']) or '(trivial)'}")
    _emit(args, data, lines)
    return OK


def _trsys_disklike(args) -> int:
    ts, _, _ = _system(args)
    lat = ts.lattice
    core = maximal_disklike(ts)
    part = partition(ts)
    internal = {lat.label(r): _pair_labels(lat, internal_transfers(ts, r)) for r in part.classes}
    data = {"disklike": core == ts, "core": _pair_labels(lat, core.pairs()), "internal": internal}
    lines = [f"disk-like: {'true' if core == ts else 'false'}",
             "maximal disk-like subsystem: " + (", ".join(data["core"]) or "(trivial)")]
    for r, pairs in internal.items():
        if pairs:
            lines.append(f"transfers inside [{r}]: {', '.join(pairs)}")
    _emit(args, data, lines)
    return OK


def cmd_idempotents(args) -> int:
    ts, _, _ = _system(args)
    lat = ts.lattice
    ws = args.workspace
    key = ws.add_system("current", ts)
    part = ws.cached("partition", key, lambda: partition(ts))
    mismatch = False
    rows = []
    for rep, members in part.classes.items():
        e = ws.cached(f"idempotent:{rep}", key, lambda rep=rep: idempotent(ts, rep))
        check = idempotent_oracle(ts, rep)
        # marks of e are 1 exactly on the admissible members of the class
        m = marks(ts, e)
        delta = {l: int(part.label[l] == rep) for l in m}
        ok = e == check and m == delta
        mismatch |= not ok
        classical = sorted(classical_decomposition(ts, e))
        rows.append({"class": lat.label(rep), "members": _labels(lat, members),
                     "idempotent": e.format(), "coeffs": e.to_json()["coeffs"],
                     "classical": _labels(lat, classical), "verified": ok})
    lines = []
    for r in rows:
        mark = "ok" if r["verified"] else "MISMATCH"
        lines.append(f"e[{r['class']}] = {r['idempotent']}")
        lines.append(f"    class {{{', '.join(r['members'])}}}; "
                     f"complete ring: {' + '.join('e_' + c for c in r['classical'])}; marks {mark}")
    _emit(args, {"idempotents": rows}, lines)
    return MISMATCH if mismatch else OK


def _load_mackey(args):
    if args.mackey == "burnside":
        ts, _, _ = _system(args)
        return burnside_mackey(ts)
    M = mackey_from_json(_read_json(args.mackey))
    problems = validate_mackey(M)
    if problems:
        raise InputError(f"{args.mackey} is not a Mackey functor: {problems[0]}")
    return M


def cmd_split(args) -> int:
    M = _load_mackey(args)
    lat = M.lattice
    ts = M.ts
    if args.mackey != "burnside" and (args.system or args.pairs):
        ts, _, _ = _system(args)
    S = split(M, ts)
    out = Path(args.out)
    lab = lat.label
    written = []
    summary = {}
    for rep, summand in S.summands.items():
        name = f"summand_{lab(rep)}"
        _write(out / f"{name}.json", canonical_json(mackey_to_json(summand, ts_ref=_ts_ref(M))))
        written.append(f"{name}.json")
        if args.dot:
            _write(out / f"{name}.dot", to_dot(summand, title=f"e[{lab(rep)}]"))
            written.append(f"{name}.dot")
        summary[lab(rep)] = {lab(l): summand.dim(l) for l in M.levels}
    cert = {
        "levels": {lab(l): {"dim": M.dim(l),
                            "blocks": {lab(r): [[str(x) for x in row] for row in S.inclusions[r][l].rows]
                                       for r in S.inclusions}}
                   for l in M.levels},
        "invertible": S.reassembly_ok(),
    }
    _write(out / "certificate.json", canonical_json(cert))
    written.append("certificate.json")
    lines = [f"{len(S.summands)} summand(s) written to {out}"]
    for r, dims in summary.items():
        lines.append(f"  [{r}] " + " ".join(f"{k}:{v}" for k, v in dims.items()))
    lines.append("reassembly certificate: " + ("invertible" if S.reassembly_ok() else "NOT invertible"))
    _emit(args, {"summands": summary, "files": written, "reassembles": S.reassembly_ok()}, lines)
    return OK if S.reassembly_ok() else MISMATCH


def _ts_ref(M: MackeyFunctor):
    G = M.lattice.group
    ref = {"order": G.order, "mul": [list(r) for r in G.mul]}
    if G.element_names:
        ref["names"] = list(G.element_names)
    return {"group": ref, "pairs": [list(p) for p in M.ts.pairs()]}


def cmd_worked_examples(args) -> int:
    golden = worked_examples.load_golden(args.golden)
    computed = worked_examples.run_examples(args.only)
    if not computed:
        raise InputError(f"no examples match {args.only!r}")
    failures = []
    lines = []
    for name, data in computed.items():
        expected = golden.get(name)
        if expected == data:
            lines.append(f"PASS {name}")
        else:
            failures.append(name)
            lines.append(f"FAIL {name}")
            lines.append(worked_examples.diff(name, expected, data).rstrip("\n"))
    lines.append(f"{len(computed) - len(failures)}/{len(computed)} examples match")
    if args.json:
        sys.stdout.write(canonical_json({"results": computed, "failures": failures}))
    else:
        sys.stdout.write("".join(line + "\n" for line in lines))
    return MISMATCH if failures else OK


# ---------------------------------------------------------------------------
# argument parsing


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--jobs", type=int, default=1, help="worker count (work runs in one process)")

    def system_opts(p):
        p.add_argument("--group", help="group name such as cyclic:6, or a JSON file")
        p.add_argument("--system", help="transfer system JSON file")
        p.add_argument("--pairs", action="append", help='generating pairs, e.g. "C2>C6,C1>C3"')

    parser = argparse.ArgumentParser(prog="incmackey", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("group", parents=[common], help="summarize a group and its subgroups")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--name")
    src.add_argument("--file")
    src.add_argument("--group")
    p.set_defaults(func=cmd_group)

    p = sub.add_parser("trsys", help="transfer systems")
    tsub = p.add_subparsers(dest="action", required=True)
    for action in ("validate", "generate", "enumerate", "disklike"):
        q = tsub.add_parser(action, parents=[common])
        system_opts(q)
        if action in ("validate", "generate"):
            q.add_argument("--dot", help="write a DOT diagram of the system")
        q.set_defaults(func=cmd_trsys)

    p = sub.add_parser("idempotents", parents=[common], help="primitive idempotents by class")
    system_opts(p)
    p.set_defaults(func=cmd_idempotents)

    p = sub.add_parser("split", parents=[common], help="split a Mackey functor by the idempotents")
    system_opts(p)
    p.add_argument("--mackey", required=True, help='Mackey functor JSON file, or "burnside"')
    p.add_argument("--out", default="split-out", help="output directory")
    p.add_argument("--dot", action="store_true", help="also write a DOT diagram per summand")
    p.set_defaults(func=cmd_split)

    p = sub.add_parser("paper-examples", parents=[common], help="run the worked C6 and C8 examples")
    p.add_argument("--only", choices=["c6", "c8"])
    p.add_argument("--golden", help="golden JSON file (default: the bundled one)")
    p.set_defaults(func=cmd_worked_examples)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return INPUT_ERROR if exc.code else OK
    args.workspace = Workspace()
    try:
        return args.func(args)
    except InadmissibleAction as exc:
        print(f"error: inadmissible action: {exc}", file=sys.stderr)
        return PRECONDITION
    except NotAdmissible as exc:
        print(f"error: {exc}", file=sys.stderr)
        return PRECONDITION
    except (InputError, GroupError, ValueError, KeyError, OSError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
