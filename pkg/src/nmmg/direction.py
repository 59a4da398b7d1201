"""Memory-gradient search directions.

    d_k = gamma_k * v_k + sum_j beta_kj * d_{k-j},   j = 1..min(k, N)

with ``beta_kj = -psi(v_k) * phi_kj^+ / N_k`` and ``phi_kj`` chosen above
``(psi(d_{k-j}) + |J| |d_{k-j}|) / gamma_k``, which makes ``d_k`` satisfy
``psi(d_k) <= (gamma_k / 2) * psi(v_k)`` when the margin is 2.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import NonDescent
from .criticality import jacobian_norm, pseudo_reciprocal, psi

SUFFICIENT_DESCENT_SLACK = 1e-10


@dataclass(frozen=True)
class DirectionMemory:
    """Previous accepted directions, newest first, at most ``capacity`` of them."""

    capacity: int
    directions: tuple = ()

    def __len__(self):
        return len(self.directions)

    def __iter__(self):
        return iter(self.directions)


def push_direction(memory: DirectionMemory, d) -> DirectionMemory:
    if memory.capacity == 0:
        return memory
    d = np.array(d, dtype=float)
    if not np.all(np.isfinite(d)):
        raise ValueError("cannot store a non-finite direction")
    kept = (d,) + memory.directions[: memory.capacity - 1]
    return DirectionMemory(memory.capacity, kept)


@dataclass(frozen=True)
class DirectionReport:
    d: np.ndarray
    gamma: float
    betas: tuple
    phis: tuple
    psi_v: float
    psi_d: float

    def sufficient_descent_ok(self, slack: float = SUFFICIENT_DESCENT_SLACK) -> bool:
        return self.psi_d <= 0.5 * self.gamma * self.psi_v + slack


def phi_kj(psi_prev: float, Jnorm: float, d_prev_norm: float, gamma: float,
           mu: float = 2.0, eps_floor: float = 1e-12) -> float:
    # base >= 0 up to rounding since |psi(d)| <= |J| |d|
    base = (psi_prev + Jnorm * d_prev_norm) / gamma
    return max(mu * base, eps_floor)


def beta_kj(psi_v: float, phi: float, N_k: int) -> float:
    return -psi_v * pseudo_reciprocal(phi) / N_k


def compute_direction(v, J, memory: DirectionMemory, gamma: float = 1.0, mu: float = 2.0,
                      eps_floor: float = 1e-12, zero_beta: bool = False) -> DirectionReport:
    """Combine ``gamma * v`` with the stored directions.

    ``zero_beta`` forces every memory weight to zero, which turns the method
    into scaled steepest descent while keeping the memory bookkeeping.

    Raises
    ------
    NonDescent
        If the resulting direction has ``psi >= 0``. Analytically impossible
        at a noncritical point; signals a numerical breakdown.
    """
    v = np.asarray(v, dtype=float)
    J = np.asarray(J, dtype=float)
    psi_v = psi(J, v)
    d = gamma * v
    betas = []
    phis = []
    N_k = len(memory)
    if N_k:
        Jnorm = jacobian_norm(J)
        for d_prev in memory:
            phi = phi_kj(psi(J, d_prev), Jnorm, float(np.linalg.norm(d_prev)), gamma, mu, eps_floor)
            beta = 0.0 if zero_beta else beta_kj(psi_v, phi, N_k)
            phis.append(phi)
            betas.append(beta)
            d = d + beta * d_prev
    psi_d = psi(J, d)
    if not psi_d < 0:
        raise NonDescent(psi_d)
    return DirectionReport(d=d, gamma=gamma, betas=tuple(betas), phis=tuple(phis),
                           psi_v=psi_v, psi_d=psi_d)
