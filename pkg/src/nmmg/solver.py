"""Outer iteration of the max-type and average-type memory-gradient methods."""

from __future__ import annotations

import logging
from typing import Callable, Optional

import numpy as np

from .core import (
    Algorithm,
    IterationRecord,
    LineSearchFail,
    NoConvergence,
    NonDescent,
    Problem,
    RunResult,
    SolverConfig,
    StopReason,
    record_iteration,
    validate_config,
)
from .criticality import solve_dual
from .direction import DirectionMemory, compute_direction, push_direction
from .linesearch import (
    AverageState,
    MaxWindow,
    average_type_search,
    max_type_search,
    update_average_state,
    window_push,
)

logger = logging.getLogger(__name__)

BASELINES = (Algorithm.MONOTONE_BASELINE, Algorithm.STEEPEST_DESCENT)


def effective_settings(cfg: SolverConfig) -> tuple[str, int, int, Optional[float]]:
    """Resolve ``(line_search, N, M, eta)`` for the configured algorithm.

    ``eta`` is ``None`` when the configured value or schedule applies.
    """
    algo = cfg.algorithm
    if algo is Algorithm.MAX_TYPE:
        return "max", cfg.N, cfg.M, None
    if algo is Algorithm.AVERAGE_TYPE:
        return "avg", cfg.N, cfg.M, None
    if algo is Algorithm.MONOTONE_BASELINE:
        return cfg.line_search, cfg.N, 0, 0.0
    return cfg.line_search, 0, cfg.M, None


def run(problem: Problem, x0, cfg: SolverConfig = SolverConfig(),
        eta_schedule: Optional[Callable[[int], float]] = None) -> RunResult:
    """Iterate from ``x0`` until ``|v(x_k)| <= eps_crit`` or a limit is hit.

    Solver failures (dual non-convergence, a non-descent direction, an
    exhausted line search) end the run with the matching stop reason; the
    trace up to that point is kept.
    """
    validate_config(cfg)
    x = np.array(x0, dtype=float)
    if x.shape != (problem.n,) or not np.all(np.isfinite(x)):
        raise ValueError(f"x0 must be a finite vector of length {problem.n}")
    ls_kind, N, M, eta_fixed = effective_settings(cfg)

    def eta_at(k):
        if eta_fixed is not None:
            return eta_fixed
        if eta_schedule is not None:
            eta = float(eta_schedule(k))
            if not cfg.eta_min <= eta <= cfg.eta_max:
                raise ValueError(f"eta schedule gave {eta} outside [eta_min, eta_max]")
            return eta
        return cfg.eta_max if cfg.eta is None else cfg.eta

    result = RunResult(problem=problem.name, config=cfg, x0=x.copy())
    F = problem.F(x)
    result.f_evals += 1
    memory = DirectionMemory(N)
    window = MaxWindow.start(M, F) if ls_kind == "max" else None
    avg = AverageState.start(F) if ls_kind == "avg" else None

    def search(rep):
        if window is not None:
            return max_type_search(problem.F, x, rep.d, rep.psi_d, window, cfg)
        return average_type_search(problem.F, x, rep.d, rep.psi_d, avg, cfg)

    ds = None
    k = 0
    while True:
        J = problem.J(x)
        result.j_evals += 1
        try:
            ds = solve_dual(J, cfg.dual_tol, cfg.dual_max_iter)
        except NoConvergence as exc:
            result.stop_reason, result.message = StopReason.NO_CONVERGENCE, str(exc)
            result.final_v_norm = float("nan")
            break
        result.dual_solves += 1
        v_norm = ds.v_norm
        result.final_v_norm = v_norm
        if v_norm <= cfg.eps_crit:
            result.stop_reason = StopReason.CRITICAL
            break
        if k >= cfg.max_iter:
            result.stop_reason = StopReason.MAX_ITER
            break
        try:
            rep = compute_direction(ds.v, J, memory, cfg.gamma, cfg.phi_margin, cfg.phi_floor,
                                    cfg.zero_beta)
            try:
                found = search(rep)
            except LineSearchFail:
                if not (cfg.restart_on_failure and len(memory)):
                    raise
                logger.info("k=%d: line search failed, restarting memory", k)
                memory = DirectionMemory(N)
                rep = compute_direction(ds.v, J, memory, cfg.gamma, cfg.phi_margin,
                                        cfg.phi_floor, cfg.zero_beta)
                found = search(rep)
        except NonDescent as exc:
            result.stop_reason, result.message = StopReason.NON_DESCENT, str(exc)
            break
        except LineSearchFail as exc:
            result.f_evals += exc.trials + 1
            result.stop_reason, result.message = StopReason.LINE_SEARCH_FAIL, str(exc)
            break
        result.f_evals += found.f_evals
        record_iteration(result.trace, IterationRecord(
            k=k, x=x, F=F, v_norm=v_norm, theta=ds.theta, psi_v=rep.psi_v, psi_d=rep.psi_d,
            gamma=rep.gamma, d=rep.d, alpha=found.alpha, ls_trials=found.trials,
            reference=window.max() if window is not None else avg.c,
            q=None if avg is None else avg.q, lam=ds.lam,
        ))
        x = x + found.alpha * rep.d
        F = found.F_new
        memory = push_direction(memory, rep.d)
        if window is not None:
            window = window_push(window, F)
        else:
            avg = update_average_state(avg, F, eta_at(k))
        k += 1

    result.final_x = x
    result.final_F = F
    logger.debug("%s: %s after %d iterations", problem.name, result.stop_reason.value, k)
    return result


def run_baseline(problem: Problem, x0, cfg: SolverConfig) -> RunResult:
    if cfg.algorithm not in BASELINES:
        raise ValueError(f"{cfg.algorithm.value} is not a baseline algorithm")
    return run(problem, x0, cfg)
