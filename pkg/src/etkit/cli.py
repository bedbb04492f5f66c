"""Command-line front end.

Verbs: validate, events, pi, hasse, join, meet, check, search.  Tables
come from .eta files, from '-' (stdin), or inline as 'r,r,r;r,r,r'.
Exit codes: 0 success, 2 rejected input, 1 internal consistency failure,
64 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from . import errors, joinmeet, quotient, search, structure, testspace


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _load_table(spec: str) -> testspace.TestTable:
    if spec == "-":
        return testspace.read_eta(sys.stdin.read())
    if ";" in spec or "," in spec:
        rows = [
            [int(tok) for tok in row.replace(",", " ").split()]
            for row in spec.split(";")
            if row.strip()
        ]
        return testspace.validate_table(rows)
    return testspace.load_eta(spec)


def _parse_vec(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(tok) for tok in text.replace(",", " ").split())
    except ValueError:
        raise errors.MalformedTable(f"bad event vector {text!r}")


def _emit(obj) -> None:
    print(json.dumps(obj, indent=2, sort_keys=False))


def _cmd_validate(args) -> int:
    table = _load_table(args.table)
    if args.json:
        _emit(
            {
                "outcomes": list(table.outcomes.names),
                "tests": table.rows(),
                "algebraic": testspace.is_algebraic(table),
            }
        )
    else:
        print(
            f"valid table: {table.n_tests} tests over outcomes "
            f"{' '.join(table.outcomes)}; algebraic: {testspace.is_algebraic(table)}"
        )
    return 0


def _cmd_events(args) -> int:
    table = _load_table(args.table)
    events = testspace.enumerate_events(table)
    if args.json:
        _emit([{"vec": list(e.vec), "witness": e.witness} for e in events])
    else:
        print(f"{len(events)} events")
        for e in events:
            print(" ".join(str(c) for c in e.vec))
    return 0


def _cmd_pi(args) -> int:
    table = _load_table(args.table)
    algebra = quotient.build_algebra(table)
    if args.json:
        _emit(quotient.to_json_dict(algebra))
    else:
        print(f"{algebra.n_classes} classes")
        for c in algebra.classes:
            members = ", ".join(str(list(m)) for m in c.members)
            print(f"  [{c.class_id}] {algebra.label(c)}: {members}")
    return 0


def _cmd_hasse(args) -> int:
    table = _load_table(args.table)
    algebra = quotient.build_algebra(table)
    if args.json:
        _emit(
            {
                "labels": {str(c.class_id): algebra.label(c) for c in algebra.classes},
                "covers": sorted([i, j] for i, j in quotient.hasse_covers(algebra)),
            }
        )
    else:
        print(quotient.to_dot(algebra), end="")
    return 0


def _answer_json(ans: joinmeet.LatticeAnswer, algebra) -> dict:
    return {
        "exists": ans.exists,
        "value": None if ans.value is None else algebra.label(ans.value),
        "witness": None if ans.witness is None else list(ans.witness.indices),
        "candidates": [algebra.label(c) for c in ans.candidates],
    }


def _cmd_join(args) -> int:
    table = _load_table(args.table)
    algebra = quotient.build_algebra(table)
    f, g = _parse_vec(args.f), _parse_vec(args.g)
    ans = joinmeet.join(f, g, algebra)
    if args.json:
        _emit(_answer_json(ans, algebra))
    elif ans.exists:
        print(
            f"join = {algebra.label(ans.value)} "
            f"(witness tuple {ans.witness.indices}; "
            f"candidates: {', '.join(algebra.label(c) for c in ans.candidates)})"
        )
    else:
        oracle = joinmeet.oracle_join(algebra.class_of(f), algebra.class_of(g), algebra)
        bounds = ", ".join(algebra.label(c) for c in oracle.candidates)
        print(f"no join; minimal upper bounds: {bounds}")
    return 0


def _cmd_meet(args) -> int:
    table = _load_table(args.table)
    algebra = quotient.build_algebra(table)
    f, g = _parse_vec(args.f), _parse_vec(args.g)
    ans = joinmeet.meet(f, g, algebra)
    if args.json:
        _emit(_answer_json(ans, algebra))
    elif ans.exists:
        print(
            f"meet = {algebra.label(ans.value)} "
            f"(witness tuple {ans.witness.indices}; "
            f"candidates: {', '.join(algebra.label(c) for c in ans.candidates)})"
        )
    else:
        oracle = joinmeet.oracle_meet(algebra.class_of(f), algebra.class_of(g), algebra)
        bounds = ", ".join(algebra.label(c) for c in oracle.candidates)
        print(f"no meet; maximal lower bounds: {bounds}")
    return 0


def _cmd_check(args) -> int:
    table = _load_table(args.table)
    algebra = quotient.build_algebra(table)
    report = structure.analyze(algebra)
    selected = [
        name
        for name, flag in (
            ("homogeneous", args.homogeneous),
            ("sharp", args.sharp),
            ("lattice", args.lattice),
            ("sharp-lattice", args.sharp_lattice),
        )
        if flag
    ] or ["homogeneous", "sharp", "lattice", "sharp-lattice"]
    if args.json:
        full = structure.report_to_json_dict(report, algebra)
        keymap = {
            "homogeneous": ["homogeneous", "homogeneity_witness", "atoms", "iota", "atomic_tests"],
            "sharp": ["sharp"],
            "lattice": ["E_lattice"],
            "sharp-lattice": ["ES_lattice", "ES_lattice_inherited"],
        }
        keys = [k for name in selected for k in keymap[name]]
        keys.append("failing_pairs")
        _emit({k: full[k] for k in dict.fromkeys(keys)})
        return 0
    if "homogeneous" in selected:
        if report.homogeneous:
            print("homogeneous")
        else:
            print(f"not homogeneous: {report.homogeneous.witness}")
    if "sharp" in selected:
        print("sharp elements: " + ", ".join(algebra.label(p) for p in report.sharp))
    if "lattice" in selected:
        if report.e_lattice:
            print("E is a lattice")
        else:
            i, j = report.e_lattice.failing_pair
            print(
                f"E is not a lattice: no {report.e_lattice.failing_op} for "
                f"({algebra.label(i)}, {algebra.label(j)})"
            )
    if "sharp-lattice" in selected:
        print(f"E_S is a lattice: {report.es_lattice.is_lattice}")
    return 0


def _cmd_search(args) -> int:
    predicates = tuple(
        p.strip() for chunk in args.predicate for p in chunk.split(",") if p.strip()
    )
    try:
        cfg = search.SearchConfig(
            max_outcomes=args.atoms,
            max_tests=args.tests,
            max_entry=args.max_entry,
            predicates=predicates,
            budget=args.budget,
        )
    except ValueError as exc:
        raise UsageError(str(exc))
    findings = search.run_search(cfg, workers=args.workers)
    payload = {
        "config": {
            "max_outcomes": cfg.max_outcomes,
            "max_tests": cfg.max_tests,
            "max_entry": cfg.max_entry,
            "predicates": list(cfg.predicates),
        },
        "count": len(findings),
        "findings": [
            {
                "canonical_key": f.canonical_key,
                "table_eta": testspace.write_eta(f.table),
                "report": structure.report_to_json_dict(
                    f.report, quotient.build_algebra(f.table)
                ),
            }
            for f in findings
        ],
    }
    text = json.dumps(payload, indent=2, sort_keys=False)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
        print(f"{len(findings)} findings written to {args.out}")
    else:
        print(text)
    return 0


def build_parser() -> _Parser:
    parser = _Parser(prog="etkit", description=__doc__)
    sub = parser.add_subparsers(dest="verb", required=True)

    def table_cmd(name, help_text, func):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("table", help=".eta path, '-' for stdin, or inline 'r,r;r,r'")
        p.add_argument("--json", action="store_true", help="machine-readable output")
        p.set_defaults(func=func)
        return p

    table_cmd("validate", "check the test-space axioms", _cmd_validate)
    table_cmd("events", "enumerate all events", _cmd_events)
    table_cmd("pi", "build the quotient algebra", _cmd_pi)
    table_cmd("hasse", "emit the Hasse diagram (DOT unless --json)", _cmd_hasse)

    for name, func in (("join", _cmd_join), ("meet", _cmd_meet)):
        p = table_cmd(name, f"compute a {name} of two event classes", func)
        p.add_argument("--f", required=True, help="first event, comma-separated")
        p.add_argument("--g", required=True, help="second event, comma-separated")

    p = table_cmd("check", "structural analysis", _cmd_check)
    p.add_argument("--homogeneous", action="store_true")
    p.add_argument("--sharp", action="store_true")
    p.add_argument("--lattice", action="store_true")
    p.add_argument("--sharp-lattice", action="store_true")

    p = sub.add_parser("search", help="exhaustive search over small tables")
    p.add_argument("--atoms", type=int, required=True, help="outcome count")
    p.add_argument("--tests", type=int, required=True, help="max tests per table")
    p.add_argument("--max-entry", type=int, required=True, help="max table entry")
    p.add_argument(
        "--predicate", action="append", default=[], help="comma-separated predicate names"
    )
    p.add_argument("--budget", type=int, default=None, help="cap on canonical tables")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out", default=None, help="findings JSON path (stdout if omitted)")
    p.set_defaults(func=_cmd_search)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(parser.format_usage(), file=sys.stderr, end="")
        print(f"error: {exc}", file=sys.stderr)
        return 64
    except (errors.TableError, errors.BudgetExceeded, errors.NotAlgebraic,
            errors.NotHomogeneous, errors.ZeroIsotropy, FileNotFoundError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except (errors.AxiomViolation, errors.CriteriaDisagree) as exc:
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
