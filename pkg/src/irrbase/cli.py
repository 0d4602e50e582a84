"""Command-line interface: ``irrbase stats | verify | corpus``.

Exit codes: 0 success, 1 invalid input, 2 budget exhausted, 3 verification failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .corpus import CSV_HEADER, SCHEMA, GroupSpec, SpecError, csv_row, default_corpus, load_corpus, run_corpus, run_stats
from .fq import FieldError
from .stats import STATISTICS, BudgetExhausted, SearchBudget, default_node_cap
from .verify import DEFAULT_ORDER_CAP, grid, verify_cell

EXIT_OK, EXIT_INVALID, EXIT_BUDGET, EXIT_FAILED = 0, 1, 2, 3


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _budget(args) -> SearchBudget:
    skip = set(args.skip or [])
    bad = skip - set(STATISTICS)
    if bad:
        raise SpecError(f"unknown statistics to skip: {sorted(bad)}")
    return SearchBudget(node_cap=args.node_cap or default_node_cap(), time_cap=args.time_cap,
                        enabled=frozenset(STATISTICS) - skip)


def _emit(obj, out: str | None):
    text = json.dumps(obj, indent=2, sort_keys=True) + "\n"
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _spec_from_args(args) -> GroupSpec:
    if args.gens_file:
        try:
            gens = json.loads(Path(args.gens_file).read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            raise SpecError(f"cannot read generators: {exc}") from None
        if not isinstance(gens, list) or not gens or not all(isinstance(g, list) for g in gens):
            raise SpecError("generator file must hold a JSON list of image arrays")
        degree = args.degree or len(gens[0])
        return GroupSpec.from_dict({"degree": degree, "generators": gens})
    if args.spec_file:
        try:
            data = json.loads(Path(args.spec_file).read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            raise SpecError(f"cannot read spec: {exc}") from None
        return GroupSpec.from_dict(data)
    data = {k: getattr(args, k) for k in ("family", "d", "m", "q", "degree") if getattr(args, k) is not None}
    if args.graph:
        data["graph"] = True
    return GroupSpec.from_dict(data)


def cmd_stats(args) -> int:
    spec = _spec_from_args(args)
    budget = _budget(args)
    try:
        report = run_stats(spec, budget, timing=args.timing)
    except BudgetExhausted as exc:
        _emit({"schema": SCHEMA, "spec": spec.to_dict(), "budget": {"node_cap": budget.node_cap,
               "outcome": f"exhausted: {exc}"}}, args.out)
        return EXIT_BUDGET
    _emit(report, args.out)
    if args.csv:
        with open(args.csv, "w", encoding="utf-8", newline="") as fh:
            fh.write(",".join(CSV_HEADER) + "\n")
            fh.write(",".join(map(str, csv_row(report))) + "\n")
    return EXIT_OK if report["bounds"]["pass"] else EXIT_FAILED


def cmd_verify(args) -> int:
    if args.d is not None:
        d_values = [args.d]
    else:
        d_values = range(2, args.d_max + 1)
    m_values = [args.m] if args.m is not None else None
    cells = []
    for d, m, q in grid(d_values, m_values, args.q):
        if d > 12 or q > 81:
            raise SpecError("grid exceeds d <= 12, q <= 81")
        cells.append(verify_cell(d, m, q, order_cap=args.order_cap))
    ok = all(c["pass"] for c in cells)
    _emit({"schema": SCHEMA, "command": "verify", "cells": cells, "pass": ok}, args.out)
    return EXIT_OK if ok else EXIT_FAILED


def cmd_corpus(args) -> int:
    if args.corpus:
        try:
            text = Path(args.corpus).read_text(encoding="utf-8")
        except OSError as exc:
            raise SpecError(f"cannot read corpus: {exc}") from None
        try:
            specs = load_corpus(text)
        except json.JSONDecodeError as exc:
            raise SpecError(f"corpus is not valid JSON: {exc}") from None
    else:
        specs = default_corpus()
    try:
        result = run_corpus(specs, _budget(args))
    except BudgetExhausted as exc:
        print(f"budget exhausted: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    if args.csv:
        Path(args.csv).write_text(result.csv(), encoding="utf-8")
    else:
        sys.stdout.write(result.csv())
    if args.json:
        _emit(result.summary(), args.json)
    return EXIT_OK if result.passed else EXIT_FAILED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="irrbase", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def budget_flags(p):
        p.add_argument("--node-cap", type=int, default=None, help="search node cap (env IRRBASE_NODE_CAP)")
        p.add_argument("--time-cap", type=float, default=None, help="seconds per group")
        p.add_argument("--skip", type=lambda s: s.split(","), default=None,
                       help="comma-separated statistics to skip (b,I,B,H,RC)")

    p = sub.add_parser("stats", help="compute b, B, H, I, RC and the greedy base for one group")
    p.add_argument("--family", choices=["pgl", "pgammal", "psl", "sym", "alt", "cyclic", "dihedral",
                                        "pair-sum", "pair-leq"])
    p.add_argument("--d", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--q", type=int)
    p.add_argument("--degree", type=int)
    p.add_argument("--graph", action="store_true", help="add the duality to pair actions")
    p.add_argument("--gens-file", help="JSON list of 0-based image arrays")
    p.add_argument("--spec-file", help="GroupSpec JSON object")
    p.add_argument("--out", help="write the JSON report here instead of stdout")
    p.add_argument("--csv", help="also write a one-row CSV summary here")
    p.add_argument("--timing", action="store_true", help="include wall-clock time (breaks byte stability)")
    budget_flags(p)
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("verify", help="check bounds and witness chains over a (d, m, q) grid")
    p.add_argument("--d", type=int)
    p.add_argument("--d-max", type=int, default=4)
    p.add_argument("--m", type=int)
    p.add_argument("--q", type=_int_list, default=[2, 3])
    p.add_argument("--order-cap", type=int, default=DEFAULT_ORDER_CAP,
                   help="largest group order for the stabilizer-chain mode")
    p.add_argument("--out")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("corpus", help="run stats over a corpus file (default: the shipped corpus)")
    p.add_argument("corpus", nargs="?")
    p.add_argument("--csv", help="write the CSV here instead of stdout")
    p.add_argument("--json", help="write the JSON summary here")
    budget_flags(p)
    p.set_defaults(func=cmd_corpus)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (SpecError, FieldError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
