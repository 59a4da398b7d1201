"""Analytic test problems with closed-form Jacobians.

``quad2``
    Two separated quadratics ``F_1 = |x - a|^2 / 2``, ``F_2 = |x - b|^2 / 2``
    with ``a = 0`` and ``b = 2 * ones(n)``. Convex; the Pareto set is the
    segment ``[a, b]``.
``quad2a``
    As ``quad2`` but with the shared metric ``A = diag(0.1, ..., 1)``,
    ``F_i = (x - c_i)^T A (x - c_i) / 2``. A common metric leaves the Pareto
    set at the segment ``[a, b]`` while making the problem ill-conditioned.
``quad3``
    Three quadratics with the same metric ``A``, centred at ``0``, ``2 e_1``
    and ``2 e_2``. Convex; the Pareto set is the triangle spanned by the
    centres.
``fon``
    Fonseca and Fleming (1995),
    ``F_{1,2} = 1 - exp(-sum_j (x_j -/+ 1/sqrt(n))^2)``. Smooth and
    nonconvex, with Pareto set ``{t * ones(n) : |t| <= 1/sqrt(n)}``. Starts
    are drawn from ``[-1, 1]^n``; the usual ``[-4, 4]^n`` box is almost
    entirely flat to working precision.

Bi-objective test problems of this kind are collected in Huband et al.,
"A review of multiobjective test problems and a scalable test problem
toolkit", IEEE TEVC 10(5), 2006.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .core import Problem

DIMENSIONS = (2, 5, 10)


@dataclass(frozen=True)
class SuiteEntry:
    id: str
    problem: Problem
    convex: bool
    pareto_distance: Optional[Callable[[np.ndarray], float]] = None

    @property
    def box(self):
        return self.problem.box


def _box(n, half_width):
    return (np.full(n, -half_width), np.full(n, half_width))


def segment_distance(x, a, b) -> float:
    ab = b - a
    t = float(np.clip((x - a) @ ab / (ab @ ab), 0.0, 1.0))
    return float(np.linalg.norm(x - (a + t * ab)))


def triangle_distance(x, p0, p1, p2) -> float:
    """Euclidean distance from ``x`` to the filled triangle ``p0 p1 p2``."""
    E = np.stack([p1 - p0, p2 - p0], axis=1)
    coef, *_ = np.linalg.lstsq(E, x - p0, rcond=None)
    if coef[0] >= 0 and coef[1] >= 0 and coef.sum() <= 1:
        return float(np.linalg.norm(x - (p0 + E @ coef)))
    return min(segment_distance(x, p0, p1), segment_distance(x, p1, p2),
               segment_distance(x, p0, p2))


def metric_diagonal(n: int) -> np.ndarray:
    return np.linspace(0.1, 1.0, n)


def separated_quadratics(name, centers, metric=None, half_width=5.0) -> Problem:
    """``F_i(x) = (x - c_i)^T diag(metric) (x - c_i) / 2``."""
    C = np.asarray(centers, dtype=float)
    m, n = C.shape
    w = np.ones(n) if metric is None else np.asarray(metric, dtype=float)

    def F(x):
        R = x - C
        return 0.5 * np.einsum("ij,ij,j->i", R, R, w)

    def J(x):
        return (x - C) * w

    return Problem(name, n, m, F, J, _box(n, half_width))


def quad2(n: int = 2) -> SuiteEntry:
    a, b = np.zeros(n), np.full(n, 2.0)
    prob = separated_quadratics(f"quad2-n{n}", [a, b])
    return SuiteEntry("quad2", prob, True, lambda x: segment_distance(np.asarray(x, float), a, b))


def quad2a(n: int = 2) -> SuiteEntry:
    a, b = np.zeros(n), np.full(n, 2.0)
    prob = separated_quadratics(f"quad2a-n{n}", [a, b], metric_diagonal(n))
    return SuiteEntry("quad2a", prob, True, lambda x: segment_distance(np.asarray(x, float), a, b))


def quad3(n: int = 2) -> SuiteEntry:
    if n < 2:
        raise ValueError("quad3 needs n >= 2")
    c = np.zeros((3, n))
    c[1, 0] = 2.0
    c[2, 1] = 2.0
    prob = separated_quadratics(f"quad3-n{n}", c, metric_diagonal(n))
    return SuiteEntry("quad3", prob, True,
                      lambda x: triangle_distance(np.asarray(x, float), c[0], c[1], c[2]))


def fon(n: int = 2) -> SuiteEntry:
    s = 1.0 / np.sqrt(n)

    def F(x):
        return np.array([1.0 - np.exp(-np.sum((x - s) ** 2)),
                         1.0 - np.exp(-np.sum((x + s) ** 2))])

    def J(x):
        e1 = np.exp(-np.sum((x - s) ** 2))
        e2 = np.exp(-np.sum((x + s) ** 2))
        return np.stack([2.0 * (x - s) * e1, 2.0 * (x + s) * e2])

    prob = Problem(f"fon-n{n}", n, 2, F, J, _box(n, 1.0))
    lo, hi = np.full(n, -s), np.full(n, s)
    return SuiteEntry("fon", prob, False, lambda x: segment_distance(np.asarray(x, float), lo, hi))


FACTORIES = {"quad2": quad2, "quad2a": quad2a, "quad3": quad3, "fon": fon}


def get_entry(problem_id: str, n: int = 2) -> SuiteEntry:
    try:
        factory = FACTORIES[problem_id]
    except KeyError:
        raise KeyError(f"unknown problem {problem_id!r}; choose from {sorted(FACTORIES)}") from None
    return factory(n)


def suite(dimensions=DIMENSIONS) -> list[SuiteEntry]:
    return [FACTORIES[pid](n) for pid in FACTORIES for n in dimensions]


class NonFinite(ArithmeticError):
    pass


def fd_check(problem: Problem, x, h: float = 1e-6) -> float:
    """Largest error of the analytic Jacobian against central differences.

    Each entry's error is divided by ``max(1, |J_ij|)``, so it is relative
    for large entries and absolute near zero.
    """
    if not h > 0:
        raise ValueError("h must be positive")
    x = np.asarray(x, dtype=float)
    with np.errstate(over="ignore", invalid="ignore"):
        J = problem.J(x)
        J_fd = np.empty_like(J)
        for j in range(problem.n):
            e = np.zeros(problem.n)
            e[j] = h
            J_fd[:, j] = (problem.F(x + e) - problem.F(x - e)) / (2.0 * h)
    if not (np.all(np.isfinite(J_fd)) and np.all(np.isfinite(J))):
        raise NonFinite(f"{problem.name}: non-finite Jacobian at {x}")
    return float(np.max(np.abs(J_fd - J) / np.maximum(1.0, np.abs(J))))
