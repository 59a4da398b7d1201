"""Acceptance criteria, one test per criterion.

Each test records a single PASS/FAIL line, printed in the terminal summary.
"""

import time

import numpy as np
import pytest

from nmmg.core import SolverConfig, StopReason
from nmmg.criticality import dual_objective, psi, solve_dual, theta_from_psi
from nmmg.harness import io
from nmmg.harness.cli import main
from nmmg.harness.front import multistart, start_points
from nmmg.problems import Problem, fd_check, get_entry, suite
from nmmg.solver import run

from oracles import grid_min_dual

REPORT = {}


def report(n, ok, detail):
    line = f"criterion {n:>2}: {'PASS' if ok else 'FAIL'}  {detail}"
    REPORT[n] = line
    print(line)
    return ok


SUITE_IDS = ("quad2", "quad2a", "quad3", "fon")
STARTS = 100


@pytest.fixture(scope="module")
def suite_runs():
    """Both algorithms on every suite problem at n = 5 from 100 seeded starts."""
    out = {}
    for pid in SUITE_IDS:
        entry = get_entry(pid, 5)
        X0 = start_points(entry.problem, STARTS, seed=1)
        for algo in ("max", "avg"):
            out[pid, algo] = (entry, multistart(entry.problem, SolverConfig(algorithm=algo), X0))
    return out


def next_F(res, k):
    return res.trace[k + 1].F if k + 1 < len(res.trace) else res.final_F


def test_criterion_01_dual_grid_oracle():
    rng = np.random.default_rng(101)
    t0 = time.perf_counter()
    worst, over = {}, {}
    below_grid = True
    for _ in range(200):
        m, n = int(rng.integers(1, 5)), int(rng.integers(1, 6))
        J = rng.uniform(-1, 1, size=(m, n))
        best, _ = grid_min_dual(J, 1e-3 if m <= 3 else 5e-3)
        value = dual_objective(J, solve_dual(J).lam)
        err = abs(value - best)
        worst[m] = max(worst.get(m, 0.0), err)
        over[m] = over.get(m, 0) + (err > 1e-6)
        below_grid &= value <= best + 1e-12
    elapsed = time.perf_counter() - t0
    ok = max(worst.values()) <= 1e-6 and elapsed < 30
    detail = ", ".join(f"m={m} max|diff|={worst[m]:.1e} ({over[m]} over)" for m in sorted(worst))
    report(1, ok, f"{detail}; solver <= grid value in all: {below_grid}; {elapsed:.1f}s")
    assert ok


def test_criterion_02_criticality_identities():
    rng = np.random.default_rng(102)
    problems = [e.problem for e in suite()]
    worst_theta = worst_psi = 0.0
    for i in range(1000):
        if i % 2:
            p = problems[i // 2 % len(problems)]
            J = p.J(p.sample(rng))
        else:
            J = rng.normal(size=(int(rng.integers(1, 6)), int(rng.integers(1, 11))))
        v = solve_dual(J).v
        vv = float(v @ v)
        worst_theta = max(worst_theta, abs(theta_from_psi(J, v) + 0.5 * vv) / (1 + vv))
        worst_psi = max(worst_psi, abs(psi(J, v) + vv) / (1 + vv))
    ok = worst_theta <= 1e-8 and worst_psi <= 1e-7
    report(2, ok, f"theta identity {worst_theta:.1e}, psi identity {worst_psi:.1e}")
    assert ok


def test_criterion_03_sufficient_descent(suite_runs):
    worst = -np.inf
    iterations = 0
    for (pid, algo), (entry, runs) in suite_runs.items():
        for res in runs:
            for r in res.trace:
                J = entry.problem.J(r.x)
                psi_v = psi(J, solve_dual(J).v)
                worst = max(worst, psi(J, r.d) - 0.5 * r.gamma * psi_v)
                iterations += 1
    ok = worst <= 1e-10
    report(3, ok, f"{iterations} iterations, max psi(d) - (gamma/2) psi(v) = {worst:.1e}")
    assert ok


def test_criterion_04_sandwich_and_monotone_average(suite_runs):
    worst_sandwich = worst_mono = -np.inf
    for pid in SUITE_IDS:
        _, runs = suite_runs[pid, "avg"]
        for res in runs:
            Fs = np.array([r.F for r in res.trace])
            A = np.cumsum(Fs, axis=0) / np.arange(1, len(Fs) + 1)[:, None]
            for k, r in enumerate(res.trace):
                worst_sandwich = max(worst_sandwich, np.max(r.F - r.reference),
                                     np.max(r.reference - A[k]))
                if k:
                    worst_mono = max(worst_mono, np.max(r.reference - res.trace[k - 1].reference))
    ok = worst_sandwich <= 1e-10 and worst_mono <= 1e-12
    report(4, ok, f"max sandwich excess {worst_sandwich:.1e}, max C increase {worst_mono:.1e}")
    assert ok


def test_criterion_05_window_monotone(suite_runs):
    worst = -np.inf
    for pid in SUITE_IDS:
        _, runs = suite_runs[pid, "max"]
        for res in runs:
            for prev, cur in zip(res.trace, res.trace[1:]):
                worst = max(worst, np.max(cur.reference - prev.reference))
    ok = worst <= 1e-12
    report(5, ok, f"max window-maximum increase {worst:.1e}")
    assert ok


def test_criterion_06_convergence_on_quad2():
    t0 = time.perf_counter()
    parts = []
    ok = True
    for n in (2, 5, 10):
        entry = get_entry("quad2", n)
        X0 = start_points(entry.problem, 100, seed=n)
        for algo in ("max", "avg"):
            runs = multistart(entry.problem, SolverConfig(algorithm=algo, max_iter=500), X0)
            reached = sum(r.min_v_norm <= 1e-6 and r.iterations <= 500 for r in runs)
            dist = max([entry.pareto_distance(r.final_x) for r in runs
                        if r.stop_reason is StopReason.CRITICAL] + [0.0])
            ok &= reached >= 99 and dist <= 1e-3
            parts.append(f"n={n} {algo} {reached}/100 dist {dist:.0e}")
    elapsed = time.perf_counter() - t0
    ok &= elapsed < 60
    report(6, ok, "; ".join(parts) + f"; {elapsed:.1f}s")
    assert ok


def _xs(res):
    return np.array([r.x for r in res.trace] + [res.final_x])


def test_criterion_07_reductions():
    worst = 0.0
    shape_ok = True
    for pid in ("quad2a", "quad3", "fon"):
        entry = get_entry(pid, 5)
        for x0 in start_points(entry.problem, 10, seed=7):
            for ls in ("max", "avg"):
                base = _xs(run(entry.problem, x0, SolverConfig(algorithm="sd", line_search=ls)))
                for cfg in (SolverConfig(algorithm=ls, N=0),
                            SolverConfig(algorithm=ls, N=5, zero_beta=True)):
                    xs = _xs(run(entry.problem, x0, cfg))
                    if xs.shape != base.shape:
                        shape_ok = False
                        continue
                    worst = max(worst, float(np.max(np.abs(xs - base))))

    # single objective: M = 0 max-type and eta = 0 average-type against monotone Armijo
    A = np.array([1.0, 4.0, 10.0])
    prob = Problem("q1", 3, 1, lambda x: np.array([0.5 * x @ (A * x)]), lambda x: (A * x)[None])
    mono_ok = True
    matched = compared = 0
    for x0 in np.random.default_rng(8).uniform(-3, 3, size=(10, 3)):
        for N in (0, 5):
            a = run(prob, x0, SolverConfig(algorithm="max", M=0, N=N))
            b = run(prob, x0, SolverConfig(algorithm="avg", eta=0.0, N=N))
            for res in (a, b):
                for k, r in enumerate(res.trace):
                    mono_ok &= bool(next_F(res, k)[0] <= r.F[0] + 1e-4 * r.alpha * r.psi_d)
            for ra, rb in zip(a.trace, b.trace):
                tau = -rb.psi_d / float(rb.d @ rb.d)
                if np.max(np.abs(ra.x - rb.x)) > 1e-12 or tau != 1.0:
                    break
                compared += 1
                matched += ra.alpha == rb.alpha
    ok = shape_ok and worst <= 1e-12 and mono_ok and matched == compared > 0
    report(7, ok, f"sd vs N=0 / zeroed beta max diff {worst:.1e}; monotone Armijo "
                  f"{'holds' if mono_ok else 'violated'}; equal steps {matched}/{compared}")
    assert ok


def test_criterion_08_jacobians():
    rng = np.random.default_rng(108)
    worst = {}
    for entry in suite():
        p = entry.problem
        worst[p.name] = max(fd_check(p, x, 1e-6) for x in p.sample(rng, size=50))
    name = max(worst, key=worst.get)
    ok = worst[name] <= 1e-5
    report(8, ok, f"{len(worst)} problems, max rel err {worst[name]:.1e} ({name})")
    assert ok


def test_criterion_09_per_step_decrease(suite_runs):
    rho = SolverConfig().rho
    q_cap = 1.0 / (1.0 - SolverConfig().eta_max)
    worst_dec = worst_q = -np.inf
    for pid in SUITE_IDS:
        _, runs = suite_runs[pid, "avg"]
        for res in runs:
            for k, r in enumerate(res.trace):
                slack = (r.reference - next_F(res, k)) - rho * r.alpha * abs(r.psi_d)
                worst_dec = max(worst_dec, -np.min(slack))
                worst_q = max(worst_q, r.q - q_cap)
    ok = worst_dec <= 1e-12 and worst_q <= 1e-12
    report(9, ok, f"max decrease shortfall {worst_dec:.1e}, max Q - 1/(1-eta_max) {worst_q:.1e}")
    assert ok


def test_criterion_10_determinism_and_round_trip(tmp_path, capsys):
    argv = ["--problem", "quad3", "--n", "5", "--seed", "3"]
    for d in ("a", "b"):
        assert main(["solve", *argv, "--out", str(tmp_path / d)]) == 0
        assert main(["front", *argv, "--starts", "20", "--jobs", "4",
                     "--out", str(tmp_path / d)]) == 0
    names = ["quad3-n5-avg-seed3.csv", "quad3-n5-avg-seed3.json",
             "quad3-n5-avg-front.csv", "quad3-n5-avg-front-stats.json"]
    identical = all((tmp_path / "a" / f).read_bytes() == (tmp_path / "b" / f).read_bytes()
                    for f in names)

    res = io.run_from_dict(io.read_json(tmp_path / "a" / names[1]))
    rows = io.parse_trace_csv((tmp_path / "a" / names[0]).read_text(encoding="utf-8"))
    csv_ok = (len(rows) == res.iterations and all(
        row["F"] == r.F.tolist() and row["v_norm"] == r.v_norm and row["alpha"] == r.alpha
        and row["psi_d"] == r.psi_d and row["trials"] == r.ls_trials
        for row, r in zip(rows, res.trace)))
    json_ok = io.run_summary(io.run_from_dict(io.run_to_dict(res))) == io.run_summary(res)
    ok = identical and csv_ok and json_ok
    report(10, ok, f"byte-identical outputs {identical}, CSV re-parse {csv_ok}, "
                   f"JSON re-parse {json_ok}")
    assert ok
