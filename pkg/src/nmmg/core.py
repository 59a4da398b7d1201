"""Problem model, solver configuration and run-record types."""

from __future__ import annotations

import dataclasses
import enum
import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np


class Algorithm(str, enum.Enum):
    MAX_TYPE = "max"
    AVERAGE_TYPE = "avg"
    MONOTONE_BASELINE = "monotone"
    STEEPEST_DESCENT = "sd"

    @classmethod
    def parse(cls, value) -> "Algorithm":
        if isinstance(value, cls):
            return value
        key = str(value).strip().lower()
        aliases = {
            "max": cls.MAX_TYPE, "maxtype": cls.MAX_TYPE, "max_type": cls.MAX_TYPE,
            "avg": cls.AVERAGE_TYPE, "average": cls.AVERAGE_TYPE,
            "averagetype": cls.AVERAGE_TYPE, "average_type": cls.AVERAGE_TYPE,
            "monotone": cls.MONOTONE_BASELINE, "monotonebaseline": cls.MONOTONE_BASELINE,
            "sd": cls.STEEPEST_DESCENT, "steepest": cls.STEEPEST_DESCENT,
            "steepestdescent": cls.STEEPEST_DESCENT,
        }
        try:
            return aliases[key]
        except KeyError:
            raise ValueError(f"unknown algorithm {value!r}") from None


class StopReason(str, enum.Enum):
    CRITICAL = "Critical"
    MAX_ITER = "MaxIter"
    LINE_SEARCH_FAIL = "LineSearchFail"
    NON_DESCENT = "NonDescent"
    NO_CONVERGENCE = "NoConvergence"


class NMMGError(Exception):
    """Base class for solver errors."""


class DimensionMismatch(NMMGError, ValueError):
    pass


class NoConvergence(NMMGError):
    def __init__(self, iterations: int, gap: float):
        super().__init__(f"dual solver stopped after {iterations} iterations (gap {gap:.3e})")
        self.iterations = iterations
        self.gap = gap


class NonDescent(NMMGError):
    def __init__(self, psi_d: float):
        super().__init__(f"search direction is not a descent direction (psi={psi_d!r})")
        self.psi_d = psi_d


class LineSearchFail(NMMGError):
    def __init__(self, trials: int):
        super().__init__(f"line search rejected {trials} trial steps")
        self.trials = trials


class IndexMismatch(NMMGError, ValueError):
    pass


@dataclass(frozen=True)
class RangeViolation:
    field: str
    constraint: str

    def __str__(self):
        return f"{self.field}: {self.constraint}"


class ConfigError(NMMGError, ValueError):
    def __init__(self, violations: Sequence[RangeViolation]):
        self.violations = list(violations)
        super().__init__("invalid configuration: " + "; ".join(map(str, self.violations)))


@dataclass(frozen=True)
class Problem:
    """A smooth map F: R^n -> R^m with its Jacobian.

    ``eval_J(x)`` returns an ``(m, n)`` array whose row ``i`` is the gradient
    of objective ``i``. ``box`` is only used to sample starting points.
    """

    name: str
    n: int
    m: int
    eval_F: Callable[[np.ndarray], np.ndarray]
    eval_J: Callable[[np.ndarray], np.ndarray]
    box: Optional[tuple[np.ndarray, np.ndarray]] = None

    def F(self, x) -> np.ndarray:
        out = np.asarray(self.eval_F(np.asarray(x, dtype=float)), dtype=float)
        if out.shape != (self.m,):
            raise DimensionMismatch(f"{self.name}: F returned shape {out.shape}, expected ({self.m},)")
        return out

    def J(self, x) -> np.ndarray:
        out = np.asarray(self.eval_J(np.asarray(x, dtype=float)), dtype=float)
        if out.shape != (self.m, self.n):
            raise DimensionMismatch(
                f"{self.name}: J returned shape {out.shape}, expected ({self.m}, {self.n})")
        return out

    def sample(self, rng: np.random.Generator, size: Optional[int] = None) -> np.ndarray:
        if self.box is None:
            raise ValueError(f"{self.name} has no sampling box")
        lo, hi = self.box
        shape = (self.n,) if size is None else (size, self.n)
        return rng.uniform(lo, hi, size=shape)


@dataclass(frozen=True)
class SolverConfig:
    algorithm: Algorithm = Algorithm.AVERAGE_TYPE
    N: int = 5
    gamma: float = 1.0
    eps_crit: float = 1e-6
    max_iter: int = 2000
    max_ls_trials: int = 100
    # max-type line search
    lam1: float = 1.0
    lam2: float = 1.0
    lam3: float = 0.5
    lam4: float = 0.5
    M: int = 10
    # both line searches
    rho: float = 1e-4
    # average-type line search
    delta: float = 0.5
    eta_min: float = 0.0
    eta_max: float = 0.85
    # direction parameters
    phi_margin: float = 2.0
    phi_floor: float = 1e-12
    rng_seed: int = 0
    # line search used by the two baselines ("max" or "avg")
    line_search: str = "max"
    # fixed eta; None means eta = eta_max at every iteration
    eta: Optional[float] = None
    unsafe_eta: bool = False
    restart_on_failure: bool = False
    zero_beta: bool = False
    dual_tol: float = 1e-10
    dual_max_iter: int = 10_000

    def __post_init__(self):
        object.__setattr__(self, "algorithm", Algorithm.parse(self.algorithm))

    def violations(self) -> list[RangeViolation]:
        out = []

        def check(ok, name, constraint):
            if not ok:
                out.append(RangeViolation(name, constraint))

        finite = all(
            math.isfinite(getattr(self, f.name))
            for f in dataclasses.fields(self)
            if isinstance(getattr(self, f.name), float)
        )
        check(finite, "config", "all real parameters finite")
        check(self.lam1 > 0, "lam1", "> 0")
        check(self.lam1 <= self.lam2, "lam1", "lam1 <= lam2")
        check(self.lam3 > 0, "lam3", "> 0")
        check(self.lam3 <= self.lam4, "lam3", "lam3 <= lam4")
        check(self.lam4 <= 1, "lam4", "<= 1")
        check(0 < self.rho < 1, "rho", "in (0,1)")
        check(0 < self.delta < 1, "delta", "in (0,1)")
        check(self.eta_min >= 0, "eta_min", ">= 0")
        check(self.eta_min <= self.eta_max, "eta_min", "eta_min <= eta_max")
        if self.unsafe_eta:
            check(self.eta_max <= 1, "eta_max", "<= 1")
        else:
            check(self.eta_max < 1, "eta_max", "< 1 (set unsafe_eta to allow 1)")
        if self.eta is not None:
            check(self.eta_min <= self.eta <= self.eta_max, "eta", "in [eta_min, eta_max]")
        check(self.gamma > 0, "gamma", "> 0")
        check(self.N >= 0, "N", ">= 0")
        check(self.M >= 0, "M", ">= 0")
        check(self.eps_crit >= 0, "eps_crit", ">= 0")
        check(self.max_iter >= 0, "max_iter", ">= 0")
        check(self.max_ls_trials >= 1, "max_ls_trials", ">= 1")
        check(self.phi_margin > 1, "phi_margin", "> 1")
        check(self.phi_floor > 0, "phi_floor", "> 0")
        check(self.line_search in ("max", "avg"), "line_search", "one of 'max', 'avg'")
        check(self.dual_tol > 0, "dual_tol", "> 0")
        check(self.dual_max_iter >= 1, "dual_max_iter", ">= 1")
        return out

    def replace(self, **changes) -> "SolverConfig":
        return dataclasses.replace(self, **changes)

    def to_dict(self) -> dict:
        d = dataclasses.asdict(self)
        d["algorithm"] = self.algorithm.value
        return d


def validate_config(cfg: SolverConfig) -> SolverConfig:
    """Return ``cfg`` unchanged, or raise ConfigError listing every violation."""
    bad = cfg.violations()
    if bad:
        raise ConfigError(bad)
    return cfg


@dataclass(frozen=True)
class IterationRecord:
    """State of one outer iteration.

    ``reference`` is the objective vector the line search compared against:
    the window maximum (max-type) or ``C_k`` (average-type). ``q`` is ``Q_k``
    for the average-type search and ``None`` otherwise.
    """

    k: int
    x: np.ndarray
    F: np.ndarray
    v_norm: float
    theta: float
    psi_v: float
    psi_d: float
    gamma: float
    d: np.ndarray
    alpha: float
    ls_trials: int
    reference: np.ndarray
    q: Optional[float] = None
    lam: Optional[np.ndarray] = None


def record_iteration(trace: list, record: IterationRecord) -> list:
    if record.k != len(trace):
        raise IndexMismatch(f"record k={record.k} does not follow a trace of length {len(trace)}")
    trace.append(record)
    return trace


@dataclass
class RunResult:
    problem: str
    config: SolverConfig
    x0: np.ndarray
    trace: list = field(default_factory=list)
    stop_reason: StopReason = StopReason.MAX_ITER
    final_x: Optional[np.ndarray] = None
    final_F: Optional[np.ndarray] = None
    final_v_norm: float = math.nan
    f_evals: int = 0
    j_evals: int = 0
    dual_solves: int = 0
    message: str = ""

    @property
    def iterations(self) -> int:
        return len(self.trace)

    @property
    def min_v_norm(self) -> float:
        return min([r.v_norm for r in self.trace] + [self.final_v_norm])
