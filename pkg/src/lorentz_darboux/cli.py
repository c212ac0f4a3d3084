"""Command line entry point: ``ldarboux run|figures|check``."""
from __future__ import annotations

import argparse
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from .errors import ConfigError, DarbouxError, SolverError

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_CONFIG = 2
EXIT_SOLVER = 3
EXIT_IO = 4


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ldarboux",
        description="Integrate Lorentz-Darboux transforms of plane curves and render them.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", default="out", help="output directory (default: out)")
    common.add_argument("--jobs", type=int, default=1, help="parallel worker processes")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", parents=[common], help="run scenario files")
    run.add_argument("scenarios", nargs="+", help="scenario .cfg files")
    run.add_argument("--tol-rel", type=float, default=None, help="override relative tolerance")
    run.add_argument("--tol-abs", type=float, default=None, help="override absolute tolerance")

    sub.add_parser("figures", parents=[common], help="regenerate the figure set")
    sub.add_parser("check", help="run the acceptance suite")
    return parser


def _run_one(job) -> tuple[int, str]:
    """Worker: load, integrate and write one scenario; returns (exit code, message)."""
    from .runner import run_scenario
    from .scenario import load_scenario

    path, out, tol_rel, tol_abs = job
    try:
        scenario = load_scenario(path).with_tolerances(rel=tol_rel, abs=tol_abs)
    except OSError as exc:
        return EXIT_IO, f"{path}: cannot read scenario: {exc}"
    except ConfigError as exc:
        return EXIT_CONFIG, f"{path}: invalid scenario: {exc}"
    try:
        result = run_scenario(scenario, out)
    except OSError as exc:
        return EXIT_IO, f"{path}: cannot write outputs: {exc}"
    except SolverError as exc:
        return EXIT_SOLVER, f"{path}: solver error ({type(exc).__name__}): {exc}"
    except DarbouxError as exc:
        return EXIT_SOLVER, f"{path}: {type(exc).__name__}: {exc}"
    return EXIT_OK, result.text()


def _cmd_run(args) -> int:
    if args.tol_rel is not None and args.tol_rel <= 0 or args.tol_abs is not None and args.tol_abs <= 0:
        print("tolerances must be positive", file=sys.stderr)
        return EXIT_CONFIG
    jobs = [(p, args.out, args.tol_rel, args.tol_abs) for p in args.scenarios]
    if args.jobs > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(_run_one, jobs))
    else:
        results = [_run_one(j) for j in jobs]
    code = EXIT_OK
    for status, message in results:
        print(message, file=sys.stdout if status == EXIT_OK else sys.stderr)
        code = max(code, status)
    return code


def _cmd_figures(args) -> int:
    from .figures import figures_command

    try:
        if args.jobs > 1:
            with ProcessPoolExecutor(max_workers=args.jobs) as pool:
                paths = figures_command(args.out, pool)
        else:
            paths = figures_command(args.out)
    except OSError as exc:
        print(f"cannot write figures: {exc}", file=sys.stderr)
        return EXIT_IO
    except SolverError as exc:
        print(f"solver error: {exc}", file=sys.stderr)
        return EXIT_SOLVER
    for p in paths:
        print(f"wrote {p}")
    return EXIT_OK


def _cmd_check(args) -> int:
    from .acceptance import run_all

    ok = True
    for result in run_all():
        print(result.line(), flush=True)
        ok &= result.passed
    return EXIT_OK if ok else EXIT_FAIL


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    handler = {"run": _cmd_run, "figures": _cmd_figures, "check": _cmd_check}[args.command]
    return handler(args)


if __name__ == "__main__":
    sys.exit(main())
