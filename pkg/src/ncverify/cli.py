"""Command line entry point: ``ncverify run``."""

from __future__ import annotations

import argparse
import sys
import time

from .errors import ConfigError
from .harness.catalogue import default_scenarios
from .harness.checks import DEFAULT_TOL, RunOptions, run_scenarios
from .harness.report import summarize, write_csv, write_json
from .harness.scenario import load_config
from .circle_kernels import DEFAULT_QUAD_POINTS


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ncverify", description="Numerical checks of noncommutative heat-smoothing inequalities.")
    sub = parser.add_subparsers(dest="command", required=True)
    run = sub.add_parser("run", help="run scenarios and report")
    run.add_argument("--config", help="JSON scenario file")
    run.add_argument("--all", action="store_true", help="include the built-in scenario catalogue")
    run.add_argument("--seed", type=int, default=None, help="override the seed of every random source")
    run.add_argument("--out", help="CSV report path")
    run.add_argument("--json", dest="json_out", help="JSON report path")
    run.add_argument("--tol", type=float, default=DEFAULT_TOL, help="tolerance for exact-identity checks")
    run.add_argument("--quad-points", type=int, default=DEFAULT_QUAD_POINTS, help="circle quadrature points")
    run.add_argument("--hard-inf", action="store_true", help="count p = inf estimates as hard checks")
    run.add_argument("--quiet", action="store_true", help="only print the summary")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    scenarios = []
    try:
        if args.config:
            scenarios += load_config(args.config)
        if args.all:
            taken = {s.id for s in scenarios}
            scenarios += [s for s in default_scenarios() if s.id not in taken]
        if not scenarios:
            raise ConfigError("nothing to run: pass --config FILE and/or --all")
    except ConfigError as exc:
        print(f"ncverify: {exc}", file=sys.stderr)
        return 2

    opts = RunOptions(tol=args.tol, quad_points=args.quad_points, seed=args.seed, hard_inf=args.hard_inf)
    start = time.perf_counter()
    try:
        rows = run_scenarios(scenarios, opts)
    except ConfigError as exc:
        print(f"ncverify: {exc}", file=sys.stderr)
        return 2
    elapsed = time.perf_counter() - start

    if args.out:
        with open(args.out, "w", newline="") as fh:
            write_csv(rows, fh)
    if args.json_out:
        with open(args.json_out, "w") as fh:
            write_json(rows, fh)

    if not args.quiet:
        per = {}
        for r in rows:
            key = r.scenario
            worst = per.get(key, "pass")
            rank = {"pass": 0, "estimate": 1, "fail": 2, "error": 3}
            per[key] = r.status if rank[r.status] > rank[worst] else worst
        for sid, status in per.items():
            print(f"{status.upper():8s} {sid}")
    counts = summarize(rows)
    print(
        f"{len(scenarios)} scenarios, {len(rows)} rows: {counts['pass']} pass, {counts['fail']} fail, "
        f"{counts['error']} error, {counts['estimate']} estimate ({elapsed:.1f} s)"
    )
    return 0 if counts["fail"] == 0 and counts["error"] == 0 else 1


if __name__ == "__main__":
    sys.exit(main())
