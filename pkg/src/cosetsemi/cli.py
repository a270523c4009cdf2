"""Command line entry point: ``cosetsemi verify|describe|build``."""
from __future__ import annotations

import argparse
import sys

from . import report as rp
from .catalog import default_catalog, load_catalog
from .errors import CosetSemiError, UnknownSuite
from .group import build_group, write_cayley_file
from .suites import BUDGET_ENV, SUITES, Options, default_budget, describe_group, run_suite

USAGE_ERROR = 2


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cosetsemi", description="Coset semigroups of finite groups.")
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run a theorem suite over a group catalog")
    v.add_argument("--suite", default="all", help=f"one of {', '.join(SUITES)}, all")
    v.add_argument("--max-order", type=int, default=24)
    v.add_argument("--format", choices=("json", "text"), default="text")
    v.add_argument("--budget", type=float, default=None,
                   help=f"seconds per semigroup isomorphism search (default ${BUDGET_ENV} or 10)")
    v.add_argument("--catalog", default=None, help="catalog file of '<name> <spec>' lines")
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--out", default=None, help="write the report here instead of stdout")

    d = sub.add_parser("describe", help="summarise one group")
    d.add_argument("--group", required=True, help="spec such as C2xC2, D8, Q8 or a Cayley-table path")
    d.add_argument("--format", choices=("json", "text"), default="text")

    b = sub.add_parser("build", help="write a Cayley table file")
    b.add_argument("--group", required=True)
    b.add_argument("--out", required=True)
    return p


def _emit(text: str, out: str | None):
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w") as fh:
            fh.write(text)


def _verify(args) -> int:
    budget = default_budget() if args.budget is None else args.budget
    opts = Options(max_order=args.max_order, budget=budget, seed=args.seed)
    if args.catalog is None:
        catalog = default_catalog(args.max_order)
    else:
        catalog = load_catalog(args.catalog)
    reports = run_suite(args.suite, catalog, opts)
    if args.format == "json":
        text = rp.to_json(args.suite, reports, max_order=args.max_order, budget=budget,
                          catalog=catalog.source)
    else:
        text = rp.to_text(args.suite, reports)
    _emit(text, args.out)
    return rp.exit_code(reports)


def _describe(args) -> int:
    r = describe_group(args.group)
    if args.format == "json":
        sys.stdout.write(rp.to_json("describe", [r]))
    else:
        for k, v in sorted(r.evidence.items()):
            print(f"{k:20} {rp._short(v)}")
    return 0


def _build(args) -> int:
    g = build_group(args.group, name=args.group)
    write_cayley_file(g, args.out)
    print(f"wrote {g.name} (order {g.order}) to {args.out}")
    return 0


def main(argv=None) -> int:
    try:
        args = _parser().parse_args(argv)
    except SystemExit as exc:
        return USAGE_ERROR if exc.code else 0
    try:
        if args.command == "verify":
            return _verify(args)
        if args.command == "describe":
            return _describe(args)
        return _build(args)
    except (UnknownSuite, CosetSemiError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR


if __name__ == "__main__":
    sys.exit(main())
