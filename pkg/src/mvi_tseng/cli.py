"""Command-line entry point: ``mvi-tseng {solve,bench,verify}``."""

from __future__ import annotations

import argparse
import logging
import sys
from dataclasses import replace
from pathlib import Path

import numpy as np

from .bench import (ConfigError, build_example41, build_example42, example_config,
                    load_config, run_bench, verify_solution)
from .problem import Strategy

log = logging.getLogger("mvi_tseng")


def _float_list(text: str) -> list:
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _report(result) -> None:
    for row in result.rows:
        rep = row.report
        line = f"eps={row.epsilon:<8g} status={row.status:<18}"
        if rep is not None:
            line += f" iters={rep.iterations:<6d} residual={rep.final_residual:.3e}"
            line += f" time={row.seconds:.4f}s"
        if row.verified is not None:
            line += f" verified={row.verified} (worst {row.worst_violation:.2e})"
        if row.error:
            line += f" error={row.error}"
        print(line)
    print(f"summary written to {result.summary_path}")


def cmd_solve(args) -> int:
    try:
        config = load_config(args.config)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.out:
        config = replace(config, output=Path(args.out))
    result = run_bench(config, verify=not args.no_verify)
    _report(result)
    return result.exit_code


def cmd_bench(args) -> int:
    try:
        config = example_config(args.example, args.eps_list, args.out, args.seed,
                                Strategy(args.selection))
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    result = run_bench(config, verify=not args.no_verify)
    _report(result)
    return result.exit_code


def cmd_verify(args) -> int:
    problem = {"41": build_example41, "42": build_example42}[args.example]()
    x = np.array(args.point, dtype=float)
    if x.size != problem.dim:
        print(f"error: example {args.example} needs a point of dimension {problem.dim}",
              file=sys.stderr)
        return 2
    try:
        ok, worst = verify_solution(problem, x, args.samples, seed=args.seed)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(f"{'PASS' if ok else 'FAIL'} worst_violation={worst:.3e}")
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mvi-tseng",
        description="Inertial Tseng extragradient solver for multi-valued variational inequalities.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="run a sweep described by a config file")
    p.add_argument("--config", required=True, type=Path)
    p.add_argument("--out", default=None, help="override the config's output directory")
    p.add_argument("--no-verify", action="store_true")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("bench", help="run a built-in example with its published parameters")
    p.add_argument("--example", required=True, choices=["41", "42"])
    p.add_argument("--eps-list", type=_float_list, default=None,
                   help="comma-separated, strictly decreasing tolerances")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--selection", default="midpoint", choices=[s.value for s in Strategy])
    p.add_argument("--out", default="bench_out")
    p.add_argument("--no-verify", action="store_true")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("verify", help="sample-check a candidate solution of a built-in example")
    p.add_argument("--example", required=True, choices=["41", "42"])
    p.add_argument("--point", required=True, type=_float_list)
    p.add_argument("--samples", type=int, default=10_000)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0) and 2
    logging.basicConfig(level=logging.INFO if args.verbose else logging.ERROR,
                        format="%(levelname)s %(name)s: %(message)s")
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
