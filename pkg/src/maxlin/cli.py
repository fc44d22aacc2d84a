"""Command-line entry point.

Exit codes: 0 yes (or success), 1 no, 2 usage or input error, 3 brute-force
budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import bench
from .errors import BudgetExceededError, ContractError, ParseError
from .formats import parse_dimacs, parse_lin, serialize_dimacs, serialize_lin, serialize_result
from .fpt_solver import DEFAULT_VAR_BUDGET, Strategy, decide
from .gf2_core import reduce_fully
from .instance_gen import CnfGenConfig, LinGenConfig, gen_cnf, gen_lin
from .sat_bridge import decide_max_r_sat_aa, formula_polynomial, poly_to_system

EXIT_YES = 0
EXIT_NO = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="maxlin", description="Max Lin-2 above average toolkit")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="decide a .lin instance")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--strategy", choices=[s.value for s in Strategy], default="auto")
    p.add_argument("--budget", type=int, default=DEFAULT_VAR_BUDGET)
    p.add_argument("--format", choices=["json", "text"], default="json")
    p.add_argument("file")

    p = sub.add_parser("reduce", help="apply both reduction rules to a fixpoint")
    p.add_argument("file")

    p = sub.add_parser("sat2lin", help="translate an r-CNF formula to a .lin system")
    p.add_argument("file")

    p = sub.add_parser("satsolve", help="decide Max r-SAT above average")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--budget", type=int, default=DEFAULT_VAR_BUDGET)
    p.add_argument("--format", choices=["json", "text"], default="json")
    p.add_argument("file")

    p = sub.add_parser("gen", help="generate a seeded random instance")
    p.add_argument("kind", choices=["lin", "cnf"])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--r", type=int, required=True, help="max equation size (lin) or clause width (cnf)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--wmax", type=int, default=1)
    p.add_argument("--reduce", action="store_true")

    p = sub.add_parser("bench", help="run a benchmark campaign, CSV on stdout")
    p.add_argument("--spec", required=True)
    p.add_argument("--out")
    return parser


def _read(path: str) -> str:
    return Path(path).read_text()


def _nonneg_k(k: int) -> None:
    if k < 0:
        raise ContractError("--k must be nonnegative")


def _dispatch(args) -> int:
    out = sys.stdout
    if args.command == "solve":
        _nonneg_k(args.k)
        system = parse_lin(_read(args.file))
        verdict = decide(system, args.k, args.strategy, args.budget)
        out.write(serialize_result(verdict, args.format))
        return EXIT_YES if verdict.is_yes else EXIT_NO

    if args.command == "satsolve":
        _nonneg_k(args.k)
        formula = parse_dimacs(_read(args.file))
        verdict = decide_max_r_sat_aa(formula, args.k, args.budget)
        out.write(serialize_result(verdict, args.format))
        return EXIT_YES if verdict.is_yes else EXIT_NO

    if args.command == "reduce":
        system = parse_lin(_read(args.file))
        reduced, kept = reduce_fully(system)
        kept_line = "kept_vars " + " ".join(str(i + 1) for i in kept)
        out.write(serialize_lin(reduced, [kept_line.rstrip()]))
        return 0

    if args.command == "sat2lin":
        formula = parse_dimacs(_read(args.file))
        poly = formula_polynomial(formula)
        line = "variables " + " ".join(str(i + 1) for i in poly.variables)
        out.write(serialize_lin(poly_to_system(poly), [line.rstrip()]))
        return 0

    if args.command == "gen":
        if args.kind == "lin":
            cfg = LinGenConfig(args.n, args.m, args.r, args.wmax, args.seed, args.reduce)
            out.write(serialize_lin(gen_lin(cfg), [f"gen lin n={args.n} m={args.m} r={args.r} "
                                                   f"wmax={args.wmax} seed={args.seed}"]))
        else:
            cfg = CnfGenConfig(args.n, args.m, args.r, args.seed)
            out.write(serialize_dimacs(gen_cnf(cfg), [f"gen cnf n={args.n} m={args.m} r={args.r} "
                                                      f"seed={args.seed}"]))
        return 0

    if args.command == "bench":
        spec = bench.load_campaign(_read(args.spec))
        text = bench.rows_to_csv(bench.run_campaign(spec))
        if args.out:
            Path(args.out).write_text(text)
        else:
            out.write(text)
        return 0

    raise AssertionError(args.command)


def run_cli(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else 0
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return _dispatch(args)
    except BudgetExceededError as exc:
        print(f"maxlin: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (ParseError, ContractError, OSError, ValueError, json.JSONDecodeError) as exc:
        print(f"maxlin: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run_cli())


if __name__ == "__main__":
    main()
