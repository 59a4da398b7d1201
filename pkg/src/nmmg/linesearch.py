"""Nonmonotone Armijo step-size rules.

Both searches accept a trial step ``alpha`` only if every objective satisfies

    F_i(x + alpha d) <= R_i + rho * alpha * psi(x, d)

where the reference ``R`` is the componentwise maximum over a window of
recent objective vectors (max-type) or the averaged vector ``C_k``
(average-type).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .core import LineSearchFail


def armijo_ok(F_trial, reference, rho: float, alpha: float, psi_d: float) -> bool:
    return bool(np.all(F_trial <= reference + rho * alpha * psi_d))


@dataclass(frozen=True)
class MaxWindow:
    """The last ``min(k, M) + 1`` objective vectors, newest first."""

    M: int
    values: tuple = ()

    @classmethod
    def start(cls, M: int, F0) -> "MaxWindow":
        return cls(M, (np.array(F0, dtype=float),))

    def max(self) -> np.ndarray:
        return np.max(np.stack(self.values), axis=0)

    def __len__(self):
        return len(self.values)


def window_push(window: MaxWindow, F_new) -> MaxWindow:
    F_new = np.array(F_new, dtype=float)
    if not np.all(np.isfinite(F_new)):
        raise ValueError("non-finite objective vector")
    return MaxWindow(window.M, ((F_new,) + window.values)[: window.M + 1])


@dataclass
class SearchResult:
    alpha: float
    trials: int
    F_new: np.ndarray
    f_evals: int
    ladder: list = field(default_factory=list)


def max_type_search(F_eval, x, d, psi_d: float, window: MaxWindow, cfg) -> SearchResult:
    """Backtrack from ``alpha0 = lam2`` by the factor ``sigma = lam3``.

    ``trials`` counts rejected steps. Raises LineSearchFail after
    ``cfg.max_ls_trials`` rejections.
    """
    if not psi_d < 0:
        raise ValueError("psi_d must be negative")
    reference = window.max()
    alpha = cfg.lam2
    ladder = []
    for trials in range(cfg.max_ls_trials + 1):
        F_trial = np.asarray(F_eval(x + alpha * d), dtype=float)
        ladder.append(alpha)
        if armijo_ok(F_trial, reference, cfg.rho, alpha, psi_d):
            return SearchResult(alpha, trials, F_trial, trials + 1, ladder)
        if trials == cfg.max_ls_trials:
            break
        alpha *= cfg.lam3
    raise LineSearchFail(cfg.max_ls_trials)


@dataclass(frozen=True)
class AverageState:
    q: float
    c: np.ndarray

    @classmethod
    def start(cls, F0) -> "AverageState":
        return cls(1.0, np.array(F0, dtype=float))


def initial_step(psi_d: float, d) -> float:
    d = np.asarray(d, dtype=float)
    return -psi_d / float(d @ d)


def average_type_search(F_eval, x, d, psi_d: float, state: AverageState, cfg) -> SearchResult:
    """Backtrack from ``tau = -psi_d / |d|^2`` by the factor ``delta``.

    ``trials`` equals the exponent ``h_k``, so ``alpha = tau * delta**h_k``.
    """
    if not psi_d < 0:
        raise ValueError("psi_d must be negative")
    tau = initial_step(psi_d, d)
    if not (tau > 0 and np.isfinite(tau)):
        raise ValueError("direction must be nonzero")
    scale = 1.0
    ladder = []
    for h in range(cfg.max_ls_trials + 1):
        alpha = tau * scale
        F_trial = np.asarray(F_eval(x + alpha * d), dtype=float)
        ladder.append(alpha)
        if armijo_ok(F_trial, state.c, cfg.rho, alpha, psi_d):
            return SearchResult(alpha, h, F_trial, h + 1, ladder)
        scale *= cfg.delta
    raise LineSearchFail(cfg.max_ls_trials)


def update_average_state(state: AverageState, F_next, eta: float) -> AverageState:
    """``Q' = eta Q + 1`` and ``C' = (eta Q C + F_next) / Q'``.

    Evaluated as ``C + (F_next - C) / Q'``, which is algebraically the same
    and cannot round above ``C`` when ``F_next <= C``.
    """
    F_next = np.asarray(F_next, dtype=float)
    q_next = eta * state.q + 1.0
    c_next = state.c + (F_next - state.c) / q_next
    return AverageState(q_next, c_next)
