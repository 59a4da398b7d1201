"""Command-line front end.

Exit codes: 0 success, 1 invariant audit failure, 2 bad arguments or
configuration, 3 solver error (line search exhausted, non-descent direction,
dual solver not converged).
"""

from __future__ import annotations

import argparse
import logging
import os
import sys
from pathlib import Path

import numpy as np

from .. import kernels
from ..audit import audit_run
from ..configfile import load_config
from ..core import Algorithm, ConfigError, SolverConfig, StopReason, validate_config
from ..problems import FACTORIES, get_entry, suite, fd_check
from ..solver import run
from . import io
from .front import approximate_front, compare, start_points

EXIT_OK, EXIT_AUDIT, EXIT_USAGE, EXIT_SOLVER = 0, 1, 2, 3
SOLVER_ERRORS = (StopReason.LINE_SEARCH_FAIL, StopReason.NON_DESCENT, StopReason.NO_CONVERGENCE)

OVERRIDES = [
    ("--rho", "rho", float), ("--delta", "delta", float), ("--eta-max", "eta_max", float),
    ("--eta-min", "eta_min", float), ("--M", "M", int), ("--N", "N", int),
    ("--gamma", "gamma", float), ("--eps-crit", "eps_crit", float),
    ("--max-iter", "max_iter", int), ("--max-ls-trials", "max_ls_trials", int),
]


class UsageError(Exception):
    pass


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--problem", default="quad2", choices=sorted(FACTORIES))
    common.add_argument("--algo", default="avg",
                        help="max, avg, monotone or sd")
    common.add_argument("--n", type=int, default=2, help="problem dimension")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--config", help="key = value configuration file")
    common.add_argument("--out", help="output directory (default $NMMG_OUT_DIR or ./nmmg_out)")
    common.add_argument("--jobs", type=int, default=1, help="concurrent runs")
    common.add_argument("-v", "--verbose", action="store_true")
    for flag, dest, kind in OVERRIDES:
        common.add_argument(flag, dest=dest, type=kind)

    p = argparse.ArgumentParser(prog="nmmg", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)
    s = sub.add_parser("solve", parents=[common], help="one problem, one start")
    s.add_argument("--x0", help="comma-separated start point (default: sampled with --seed)")
    f = sub.add_parser("front", parents=[common], help="multistart front approximation")
    f.add_argument("--starts", type=int, default=100)
    c = sub.add_parser("compare", parents=[common], help="all algorithms on matched starts")
    c.add_argument("--starts", type=int, default=20)
    k = sub.add_parser("check", parents=[common], help="Jacobian check and invariant audit")
    k.add_argument("--starts", type=int, default=5)
    k.add_argument("--fd-points", type=int, default=50)
    return p


def make_config(args) -> SolverConfig:
    overrides = {dest: getattr(args, dest) for _, dest, _ in OVERRIDES}
    cfg = load_config(args.config, **overrides)
    try:
        cfg = cfg.replace(algorithm=Algorithm.parse(args.algo), rng_seed=args.seed)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    return validate_config(cfg)


def out_dir(args) -> Path:
    return Path(args.out or os.environ.get("NMMG_OUT_DIR") or "nmmg_out")


def cmd_solve(args, cfg) -> int:
    entry = get_entry(args.problem, args.n)
    prob = entry.problem
    if args.x0:
        x0 = np.array([float(t) for t in args.x0.split(",")])
        if x0.shape != (prob.n,):
            raise UsageError(f"--x0 needs {prob.n} values")
    else:
        x0 = start_points(prob, 1, args.seed)[0]
    result = run(prob, x0, cfg)
    stem = out_dir(args) / f"{prob.name}-{cfg.algorithm.value}-seed{args.seed}"
    io.write_text(stem.with_suffix(".csv"), io.trace_csv(result))
    io.write_json(stem.with_suffix(".json"), io.run_to_dict(result))
    print(f"{prob.name} {cfg.algorithm.value}: {result.stop_reason.value} after "
          f"{result.iterations} iterations, |v|={result.final_v_norm:.3e}, "
          f"F={np.array2string(result.final_F, precision=6)}")
    print(f"trace written to {stem}.csv / .json")
    return EXIT_SOLVER if result.stop_reason in SOLVER_ERRORS else EXIT_OK


def front_payload(fr, cfg, X0) -> dict:
    return {
        "schema_version": io.SCHEMA_VERSION,
        "kind": "front",
        "problem": fr.problem,
        "algorithm": fr.algorithm,
        "seed": fr.seed,
        "config": cfg.to_dict(),
        "stats": fr.stats(),
        "front": [int(i) for i in fr.front],
        "runs": [{"start": i, "x0": io._floats(X0[i]), "summary": io.run_summary(r)}
                 for i, r in enumerate(fr.runs)],
    }


def front_csv(fr) -> str:
    m = len(fr.runs[0].final_F)
    n = len(fr.runs[0].final_x)
    header = (["start"] + [f"F_{i + 1}" for i in range(m)] + [f"x_{j + 1}" for j in range(n)]
              + ["iterations", "stop_reason", "final_v_norm"])
    rows = []
    for i in fr.front:
        r = fr.runs[i]
        rows.append([int(i), *r.final_F, *r.final_x, r.iterations, r.stop_reason.value,
                     r.final_v_norm])
    return io.rows_csv(header, rows)


def cmd_front(args, cfg) -> int:
    prob = get_entry(args.problem, args.n).problem
    fr = approximate_front(prob, cfg, args.starts, args.seed, args.jobs)
    X0 = start_points(prob, args.starts, args.seed)
    stem = out_dir(args) / f"{prob.name}-{cfg.algorithm.value}-front"
    io.write_text(Path(f"{stem}.csv"), front_csv(fr))
    io.write_json(Path(f"{stem}-stats.json"), front_payload(fr, cfg, X0))
    st = fr.stats()
    print(f"{prob.name} {cfg.algorithm.value}: {st['n_nondominated']} nondominated of "
          f"{st['starts']} starts, convergence rate {st['convergence_rate']:.2f}, "
          f"median iterations {st['median_iterations']:g}")
    print(f"front written to {stem}.csv, stats to {stem}-stats.json")
    bad = sum(r.stop_reason in SOLVER_ERRORS for r in fr.runs)
    return EXIT_SOLVER if bad else EXIT_OK


COMPARE_COLUMNS = ["algorithm", "starts", "convergence_rate", "median_iterations",
                   "median_f_evals", "max_final_v_norm", "n_nondominated"]


def cmd_compare(args, cfg) -> int:
    prob = get_entry(args.problem, args.n).problem
    results = compare(prob, cfg, args.starts, args.seed, jobs=args.jobs)
    rows = [[algo] + [fr.stats()[c] for c in COMPARE_COLUMNS[1:]] for algo, fr in results.items()]
    stem = out_dir(args) / f"{prob.name}-compare"
    io.write_text(Path(f"{stem}.csv"), io.rows_csv(COMPARE_COLUMNS, rows))
    io.write_json(Path(f"{stem}.json"), {
        "schema_version": io.SCHEMA_VERSION, "kind": "compare", "problem": prob.name,
        "seed": args.seed, "config": cfg.to_dict(),
        "algorithms": {algo: fr.stats() for algo, fr in results.items()},
    })
    print(f"{'algorithm':<10} {'conv':>6} {'med it':>8} {'med fev':>8} {'max |v|':>10} {'front':>6}")
    for row in rows:
        print(f"{row[0]:<10} {row[2]:>6.2f} {row[3]:>8g} {row[4]:>8g} {row[5]:>10.2e} {row[6]:>6d}")
    bad = sum(r.stop_reason in SOLVER_ERRORS for fr in results.values() for r in fr.runs)
    return EXIT_SOLVER if bad else EXIT_OK


FD_STEP = 1e-6
FD_TOL = 1e-5


def cmd_check(args, cfg) -> int:
    failures = 0
    rng = np.random.default_rng(args.seed)
    for entry in suite():
        prob = entry.problem
        err = max(fd_check(prob, x, FD_STEP) for x in prob.sample(rng, size=args.fd_points))
        status = "ok" if err <= FD_TOL else "FAIL"
        failures += status == "FAIL"
        print(f"fd_check {prob.name:<12} max rel err {err:.2e} {status}")
    for entry in suite():
        prob = entry.problem
        for algo in (Algorithm.MAX_TYPE, Algorithm.AVERAGE_TYPE):
            c = cfg.replace(algorithm=algo)
            violations = []
            for x0 in start_points(prob, args.starts, args.seed):
                violations += audit_run(prob, run(prob, x0, c))
            names = sorted({v.invariant for v in violations})
            print(f"audit {prob.name:<12} {algo.value:<4} "
                  + ("ok" if not violations else f"FAIL {len(violations)}: {', '.join(names)}"))
            for v in violations[:3]:
                print(f"    {v}")
            failures += bool(violations)
    print(f"backend: {kernels.BACKEND}")
    return EXIT_AUDIT if failures else EXIT_OK


COMMANDS = {"solve": cmd_solve, "front": cmd_front, "compare": cmd_compare, "check": cmd_check}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        cfg = make_config(args)
        return COMMANDS[args.command](args, cfg)
    except (ConfigError, UsageError, KeyError, ValueError, OSError) as exc:
        print(f"nmmg: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
