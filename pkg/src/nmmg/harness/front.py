"""Multistart runs, nondominated filtering and algorithm comparison."""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .. import kernels
from ..core import Algorithm, Problem, RunResult, SolverConfig, StopReason
from ..solver import run

COMPARE_ALGORITHMS = (Algorithm.MAX_TYPE, Algorithm.AVERAGE_TYPE,
                      Algorithm.MONOTONE_BASELINE, Algorithm.STEEPEST_DESCENT)


def nondominated_filter(points) -> np.ndarray:
    """Indices of the points no other point dominates, in input order.

    ``u`` dominates ``w`` iff ``u <= w`` componentwise and ``u != w``;
    duplicates therefore survive together.
    """
    P = np.asarray(points, dtype=float)
    if P.size == 0:
        return np.zeros(0, dtype=int)
    if P.ndim != 2:
        raise ValueError("points must be a 2-D array")
    return np.flatnonzero(kernels.nondominated_mask(P))


def start_points(problem: Problem, starts: int, seed: int) -> np.ndarray:
    return problem.sample(np.random.default_rng(seed), size=starts)


def multistart(problem: Problem, cfg: SolverConfig, X0, jobs: int = 1) -> list[RunResult]:
    """Run from each row of ``X0``; results come back in row order."""
    if jobs <= 1:
        return [run(problem, x0, cfg) for x0 in X0]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(lambda x0: run(problem, x0, cfg), X0))


@dataclass
class FrontResult:
    problem: str
    algorithm: str
    seed: int
    runs: list = field(default_factory=list)
    front: np.ndarray = field(default_factory=lambda: np.zeros(0, dtype=int))

    def stats(self) -> dict:
        it = [r.iterations for r in self.runs]
        fe = [r.f_evals for r in self.runs]
        crit = [r.stop_reason is StopReason.CRITICAL for r in self.runs]
        return {
            "starts": len(self.runs),
            "convergence_rate": float(np.mean(crit)) if self.runs else 0.0,
            "median_iterations": float(np.median(it)) if it else 0.0,
            "median_f_evals": float(np.median(fe)) if fe else 0.0,
            "max_final_v_norm": float(max(r.final_v_norm for r in self.runs)) if self.runs else 0.0,
            "n_nondominated": int(self.front.size),
        }


def approximate_front(problem: Problem, cfg: SolverConfig, starts: int, seed: int,
                      jobs: int = 1) -> FrontResult:
    X0 = start_points(problem, starts, seed)
    runs = multistart(problem, cfg, X0, jobs)
    finals = np.array([r.final_F for r in runs])
    return FrontResult(problem.name, cfg.algorithm.value, seed, runs, nondominated_filter(finals))


def compare(problem: Problem, cfg: SolverConfig, starts: int, seed: int,
            algorithms=COMPARE_ALGORITHMS, jobs: int = 1) -> dict:
    """Run each algorithm from the same start points; map algorithm -> FrontResult."""
    out = {}
    for algo in algorithms:
        out[algo.value] = approximate_front(problem, cfg.replace(algorithm=algo), starts, seed, jobs)
    return out
