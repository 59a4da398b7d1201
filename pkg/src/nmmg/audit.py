"""Re-check a finished run against the invariants the method guarantees.

Every check recomputes from the problem and the stored trace; nothing is
taken from the solver's own bookkeeping beyond what the trace records.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import Problem, RunResult, StopReason
from .criticality import psi
from .linesearch import armijo_ok
from .solver import effective_settings

SUFFICIENT_DESCENT_TOL = 1e-10
SANDWICH_TOL = 1e-10
MONOTONE_TOL = 1e-12
IDENTITY_TOL = 1e-7


@dataclass(frozen=True)
class Violation:
    invariant: str
    k: int
    detail: str

    def __str__(self):
        return f"[{self.invariant}] k={self.k}: {self.detail}"


def audit_run(problem: Problem, result: RunResult) -> list[Violation]:
    cfg = result.config
    ls_kind, _, M_eff, eta_fixed = effective_settings(cfg)
    out: list[Violation] = []

    def fail(name, k, detail):
        out.append(Violation(name, k, detail))

    trace = result.trace
    if result.stop_reason is StopReason.NON_DESCENT:
        fail("sufficient-descent", len(trace), "run stopped on a non-descent direction: "
             + result.message)
    if result.stop_reason is StopReason.CRITICAL and not result.final_v_norm <= cfg.eps_crit:
        fail("critical-stop", len(trace), f"final |v|={result.final_v_norm!r} > eps_crit")

    F_hist = [r.F for r in trace] + [result.final_F]
    xs = [r.x for r in trace] + [result.final_x]
    running_sum = np.zeros_like(F_hist[0])
    prev_ref = None
    eta_cap = eta_fixed if eta_fixed is not None else cfg.eta_max
    monotone = M_eff == 0 if ls_kind == "max" else eta_cap == 0

    for i, r in enumerate(trace):
        if r.k != i:
            fail("trace-index", i, f"record carries k={r.k}")
        if r.v_norm > cfg.eps_crit and not r.psi_d < 0:
            fail("descent", r.k, f"psi_d={r.psi_d!r}")
        bound = 0.5 * r.gamma * r.psi_v + SUFFICIENT_DESCENT_TOL
        if not r.psi_d <= bound:
            fail("sufficient-descent", r.k, f"psi_d={r.psi_d!r} > gamma/2*psi_v={bound!r}")

        J = problem.J(r.x)
        if r.lam is not None:
            v = -(r.lam @ J)
            vv = float(v @ v)
            if abs(psi(J, v) + vv) > IDENTITY_TOL * (1 + vv):
                fail("dual-identity", r.k, f"psi(v)+|v|^2={psi(J, v) + vv!r}")
        if abs(psi(J, r.d) - r.psi_d) > 1e-12 * max(1.0, abs(r.psi_d)):
            fail("stored-psi", r.k, "psi_d does not match recomputation")

        x_next = r.x + r.alpha * r.d
        if not np.array_equal(x_next, xs[i + 1]):
            fail("step", r.k, "x_{k+1} != x_k + alpha_k d_k")
        F_trial = problem.F(x_next)
        if not np.array_equal(F_trial, F_hist[i + 1]):
            fail("stale-value", r.k, "stored F(x_{k+1}) differs from re-evaluation")
        if not armijo_ok(F_trial, r.reference, cfg.rho, r.alpha, r.psi_d):
            fail("acceptance", r.k, "accepted step fails its Armijo test on re-evaluation")

        running_sum = running_sum + r.F
        if ls_kind == "max":
            if prev_ref is not None and np.any(r.reference > prev_ref + MONOTONE_TOL):
                fail("window-monotone", r.k, "window maximum increased")
        else:
            A = running_sum / (i + 1)
            if np.any(r.F > r.reference + SANDWICH_TOL) or np.any(r.reference > A + SANDWICH_TOL):
                fail("sandwich", r.k, "F(x_k) <= C_k <= A_k violated")
            if prev_ref is not None and np.any(r.reference > prev_ref + MONOTONE_TOL):
                fail("average-monotone", r.k, "C_k increased")
            drop = r.reference - F_hist[i + 1]
            if np.any(drop < cfg.rho * r.alpha * abs(r.psi_d) - MONOTONE_TOL):
                fail("per-step-decrease", r.k, "C_k - F(x_{k+1}) below rho*alpha*|psi_d|")
            if eta_cap < 1 and r.q is not None and r.q > 1.0 / (1.0 - eta_cap) + MONOTONE_TOL:
                fail("q-bound", r.k, f"Q_k={r.q!r} exceeds 1/(1-eta_max)")
        prev_ref = r.reference

        if monotone and np.any(F_hist[i + 1] > F_hist[0]):
            fail("level-set", r.k, "F(x_k) <= F(x_0) violated in a monotone run")
    return out
