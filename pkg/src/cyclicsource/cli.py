"""Command-line surface.

Commands:
    infer FILE                 analyze every block record in a descriptor file
    verify --p P --ell L       run the oracle verification sweeps
    tree check FILE            validate every tree record
    tree compare FILE A B      compare two tree records by label
    tree emit-star E M P ELL   write a star tree record
    dade add|signs|module ...  Dade group arithmetic on bit vectors

Exit codes: 0 success, 1 per-record analysis error or failed check,
2 parse failure.  Reports render as human-readable text or as one JSON
object per line (`--format json-lines`), byte-deterministic for fixed input.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import dade, trees, verify
from .blocks import analyze
from .descriptors import (
    DescriptorError,
    DescriptorFile,
    emit_descriptor,
    parse_descriptor,
    tree_record,
)
from .groups import GroupSpec
from .oracle import OracleCapacityError, check_capacity

EXIT_OK = 0
EXIT_RECORD_ERROR = 1
EXIT_PARSE_ERROR = 2


def _emit(records: list[dict], fmt: str, out) -> None:
    if fmt == "json-lines":
        for record in records:
            out.write(json.dumps(record, sort_keys=True, separators=(",", ":")))
            out.write("\n")
        return
    for record in records:
        kind = record.get("record", "?")
        label = record.get("label", "")
        head = f"[{kind}] {label}".rstrip()
        if record.get("status") == "error":
            out.write(f"{head}: ERROR {record['error']}\n")
        else:
            body = {k: v for k, v in record.items()
                    if k not in ("record", "label", "status")}
            rendered = ", ".join(f"{k}={v}" for k, v in sorted(body.items()))
            out.write(f"{head}: {rendered}\n")


def _read_file(path: str):
    try:
        with open(path, "r", encoding="utf-8") as handle:
            return handle.read()
    except OSError as exc:
        print(f"cannot read {path}: {exc}", file=sys.stderr)
        return None


def _load(path: str) -> DescriptorFile | None:
    text = _read_file(path)
    if text is None:
        return None
    try:
        return parse_descriptor(text)
    except DescriptorError as exc:
        for issue in exc.issues:
            print(f"parse error at {issue.path}: {issue.message}", file=sys.stderr)
        return None


def cmd_infer(args) -> int:
    doc = _load(args.file)
    if doc is None:
        return EXIT_PARSE_ERROR
    records = []
    failed = False
    for idx, block in enumerate(doc.blocks):
        label = block.label or f"blocks[{idx}]"
        base = {"record": "block", "label": label}
        try:
            w = analyze(block)
            records.append({
                **base,
                "status": "ok",
                "alpha": str(w.dade),
                "jordan": w.jordan,
                "signs": list(w.signs.signs),
                "trivial": w.trivial,
                "provenance": w.provenance,
            })
        except ValueError as exc:
            failed = True
            records.append({**base, "status": "error", "error": str(exc)})
    _emit(records, args.format, sys.stdout)
    return EXIT_RECORD_ERROR if failed else EXIT_OK


def cmd_verify(args) -> int:
    group = GroupSpec(args.p, args.ell)
    cap = args.oracle_cap
    try:
        check_capacity(group.order, cap)
        results = verify.run_suites(group, args.suite or None, cap)
    except (OracleCapacityError, ValueError) as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_RECORD_ERROR
    records = []
    failed = False
    for result in results:
        record = {
            "record": "suite",
            "label": result.name,
            "status": "ok" if result.passed else "error",
            "cases": result.cases,
            "skipped": result.skipped,
            "mismatches": len(result.mismatches),
        }
        if not result.passed:
            failed = True
            record["error"] = "mismatches found"
            record["witnesses"] = result.mismatches
        records.append(record)
    _emit(records, args.format, sys.stdout)
    return EXIT_RECORD_ERROR if failed else EXIT_OK


def cmd_tree(args) -> int:
    if args.tree_command == "emit-star":
        group = GroupSpec(args.p, args.ell)
        try:
            t = trees.star(args.e, args.m, group)
        except ValueError as exc:
            print(str(exc), file=sys.stderr)
            return EXIT_RECORD_ERROR
        doc = DescriptorFile(trees=[t])
        sys.stdout.write(emit_descriptor(doc))
        return EXIT_OK

    doc = _load(args.file)
    if doc is None:
        return EXIT_PARSE_ERROR

    if args.tree_command == "check":
        records = []
        failed = False
        for idx, t in enumerate(doc.trees):
            label = t.label or f"trees[{idx}]"
            violations = trees.validate(t)
            if violations:
                failed = True
                records.append({
                    "record": "tree", "label": label, "status": "error",
                    "error": "invalid tree", "violations": violations,
                })
            else:
                records.append({
                    "record": "tree", "label": label, "status": "ok",
                    "edges": t.num_edges, "multiplicity": t.multiplicity,
                })
        _emit(records, args.format, sys.stdout)
        return EXIT_RECORD_ERROR if failed else EXIT_OK

    # compare
    by_label = {t.label: t for t in doc.trees}
    missing = [name for name in (args.a, args.b) if name not in by_label]
    if missing:
        print(f"tree record(s) not found: {', '.join(missing)}", file=sys.stderr)
        return EXIT_RECORD_ERROR
    t1, t2 = by_label[args.a], by_label[args.b]
    bad = trees.validate(t1) + trees.validate(t2)
    if bad:
        print("invalid tree(s): " + "; ".join(bad), file=sys.stderr)
        return EXIT_RECORD_ERROR
    _emit([{
        "record": "comparison",
        "label": f"{args.a} vs {args.b}",
        "status": "ok",
        "similar": trees.similar(t1, t2),
        "planar_isomorphic": trees.planar_isomorphic(t1, t2),
    }], args.format, sys.stdout)
    return EXIT_OK


def _parse_alpha(text: str, group: GroupSpec) -> dade.DadeElement:
    if len(text) != group.ell or set(text) - {"0", "1"}:
        raise ValueError(f"alpha must be {group.ell} bits, got {text!r}")
    return dade.DadeElement(group, tuple(int(c) for c in text))


def cmd_dade(args) -> int:
    group = GroupSpec(args.p, args.ell)
    try:
        if args.dade_command == "add":
            a = _parse_alpha(args.a, group)
            b = _parse_alpha(args.b, group)
            result = {"record": "dade", "label": f"{args.a}+{args.b}",
                      "status": "ok", "alpha": str(dade.dade_add(a, b))}
        elif args.dade_command == "signs":
            e = _parse_alpha(args.alpha, group)
            result = {"record": "dade", "label": args.alpha, "status": "ok",
                      "signs": list(dade.psi(e).signs)}
        else:  # module
            e = _parse_alpha(args.alpha, group)
            result = {"record": "dade", "label": args.alpha, "status": "ok",
                      "jordan": dade.w_module(e)}
    except ValueError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_RECORD_ERROR
    _emit([result], args.format, sys.stdout)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cyclicsource",
        description="Source modules of cyclic blocks: sign calculus, "
                    "character inference, Brauer trees, oracle sweeps.",
    )
    parser.add_argument("--format", choices=("human", "json-lines"),
                        default="human", help="report rendering")
    parser.add_argument("--oracle-cap", type=int, default=None,
                        help="oracle capacity in matrix entries "
                             "(overrides CYCLICSOURCE_ORACLE_CAP)")
    sub = parser.add_subparsers(dest="command", required=True)

    p_infer = sub.add_parser("infer", help="analyze block descriptors")
    p_infer.add_argument("file")
    p_infer.set_defaults(func=cmd_infer)

    p_verify = sub.add_parser("verify", help="run oracle verification sweeps")
    p_verify.add_argument("--p", type=int, required=True)
    p_verify.add_argument("--ell", type=int, required=True)
    p_verify.add_argument("--suite", action="append",
                          choices=sorted(verify.SUITES),
                          help="run only the named suite (repeatable)")
    p_verify.set_defaults(func=cmd_verify)

    p_tree = sub.add_parser("tree", help="Brauer tree operations")
    tree_sub = p_tree.add_subparsers(dest="tree_command", required=True)
    t_check = tree_sub.add_parser("check")
    t_check.add_argument("file")
    t_compare = tree_sub.add_parser("compare")
    t_compare.add_argument("file")
    t_compare.add_argument("a")
    t_compare.add_argument("b")
    t_star = tree_sub.add_parser("emit-star")
    t_star.add_argument("e", type=int)
    t_star.add_argument("m", type=int)
    t_star.add_argument("p", type=int)
    t_star.add_argument("ell", type=int)
    p_tree.set_defaults(func=cmd_tree)

    p_dade = sub.add_parser("dade", help="Dade group arithmetic")
    p_dade.add_argument("--p", type=int, required=True)
    p_dade.add_argument("--ell", type=int, required=True)
    dade_sub = p_dade.add_subparsers(dest="dade_command", required=True)
    d_add = dade_sub.add_parser("add")
    d_add.add_argument("a")
    d_add.add_argument("b")
    d_signs = dade_sub.add_parser("signs")
    d_signs.add_argument("alpha")
    d_module = dade_sub.add_parser("module")
    d_module.add_argument("alpha")
    p_dade.set_defaults(func=cmd_dade)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
