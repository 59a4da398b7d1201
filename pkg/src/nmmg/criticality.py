"""Steepest-descent subproblem and Pareto-criticality measures.

At a point with Jacobian ``J`` (rows are objective gradients) the direction
``v`` minimizes ``psi(J, d) + 0.5 * |d|^2``. It is recovered from the dual:
the minimum-norm point of the convex hull of the gradients,

    lam = argmin_{lam in simplex} 0.5 * |lam @ J|^2,    v = -lam @ J,

and the optimal value is ``theta = -0.5 * |v|^2``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels
from .core import DimensionMismatch, NoConvergence

DEFAULT_TOL = 1e-10
DEFAULT_MAX_ITER = 10_000
# the kernel keeps iterating until the gap is also small next to |v|^2, so
# that psi(v) stays clearly negative near critical points
RELATIVE_GAP = 1e-6
ROUNDOFF_GAP = 64 * np.finfo(float).eps


@dataclass(frozen=True)
class DualSolution:
    lam: np.ndarray
    v: np.ndarray
    theta: float
    iterations: int = 0
    gap: float = 0.0

    @property
    def v_norm(self) -> float:
        return float(np.linalg.norm(self.v))


def _as_jacobian(J) -> np.ndarray:
    J = np.asarray(J, dtype=float)
    if J.ndim != 2 or J.shape[0] < 1:
        raise DimensionMismatch(f"Jacobian must be a non-empty 2-D array, got shape {J.shape}")
    return J


def psi(J, d) -> float:
    """Largest directional derivative ``max_i <grad F_i, d>``."""
    J = _as_jacobian(J)
    d = np.asarray(d, dtype=float)
    if d.shape != (J.shape[1],):
        raise DimensionMismatch(f"direction has shape {d.shape}, Jacobian has {J.shape[1]} columns")
    return float(np.max(J @ d))


def jacobian_norm(J) -> float:
    """Operator norm from l2 to l-infinity, i.e. the largest row 2-norm."""
    J = _as_jacobian(J)
    if not np.all(np.isfinite(J)):
        raise ValueError("Jacobian has non-finite entries")
    s = float(np.max(np.abs(J)))
    if s == 0.0:
        return 0.0
    # rescale so tiny or huge rows neither underflow nor overflow
    Js = J / s
    return s * float(np.max(np.sqrt(np.einsum("ij,ij->i", Js, Js))))


def pseudo_reciprocal(a: float) -> float:
    return 0.0 if a == 0 else 1.0 / a


def solve_dual(J, tol: float = DEFAULT_TOL, max_iter: int = DEFAULT_MAX_ITER) -> DualSolution:
    """Solve the min-norm problem over the simplex for the rows of ``J``.

    One and two objectives are handled in closed form. Three or more go to
    the Frank-Wolfe away-step kernel, which stops when its duality gap drops
    below ``tol * max(1, max_i |grad F_i|^2)`` (the scaling keeps the
    tolerance meaningful for large gradients). The result is then refined by
    an exact solve on its support.

    Raises
    ------
    NoConvergence
        If the kernel reaches ``max_iter`` with the gap still above tolerance.
    """
    J = _as_jacobian(J)
    if not tol > 0:
        raise ValueError("tol must be positive")
    m = J.shape[0]
    iters = 0
    gap = 0.0
    if m == 1:
        lam = np.ones(1)
    elif m == 2:
        g1, g2 = J
        diff = g1 - g2
        dd = float(diff @ diff)
        if dd == 0.0:
            t = 0.5
        else:
            t = min(max(-float(g2 @ diff) / dd, 0.0), 1.0)
        lam = np.array([t, 1.0 - t])
    else:
        G = J @ J.T
        scale = max(1.0, float(np.max(np.diag(G))))
        threshold = tol * scale
        lam, iters, gap = kernels.min_norm_simplex(
            G, threshold, RELATIVE_GAP, ROUNDOFF_GAP * scale, max_iter)
        if not gap <= threshold:
            raise NoConvergence(iters, gap)
        lam = _polish(J, np.maximum(lam, 0.0) / np.sum(np.maximum(lam, 0.0)))
        gap = _gap(J, lam)
    v = -(lam @ J)
    return DualSolution(lam=lam, v=v, theta=-0.5 * float(v @ v), iterations=int(iters), gap=float(gap))


def _gap(J, lam) -> float:
    w = lam @ J
    return float(w @ w - np.min(J @ w))


def _polish(J, lam):
    """Re-solve exactly on the support of ``lam``; keep it only if it helps."""
    support = np.flatnonzero(lam > 0.0)
    k = support.size
    if k < 2:
        return lam
    Js = J[support]
    K = np.zeros((k + 1, k + 1))
    K[:k, :k] = Js @ Js.T
    K[:k, k] = K[k, :k] = 1.0
    rhs = np.zeros(k + 1)
    rhs[k] = 1.0
    sol, *_ = np.linalg.lstsq(K, rhs, rcond=None)
    if not np.all(np.isfinite(sol)) or np.any(sol[:k] < 0.0):
        return lam
    cand = np.zeros_like(lam)
    cand[support] = sol[:k] / np.sum(sol[:k])
    if _gap(J, cand) <= _gap(J, lam):
        return cand
    return lam


def dual_objective(J, lam) -> float:
    w = np.asarray(lam, dtype=float) @ np.asarray(J, dtype=float)
    return 0.5 * float(w @ w)


def is_critical(ds: DualSolution, eps_crit: float) -> bool:
    return ds.v_norm <= eps_crit


def theta_from_psi(J, v) -> float:
    """``psi(J, v) + 0.5 * |v|^2``; equals ``theta`` at the optimum."""
    v = np.asarray(v, dtype=float)
    return psi(J, v) + 0.5 * float(v @ v)


__all__ = [
    "DualSolution", "psi", "jacobian_norm", "pseudo_reciprocal", "solve_dual",
    "dual_objective", "is_critical", "theta_from_psi",
]
