"""Nonmonotone multiobjective memory-gradient solvers."""

from .core import (
    Algorithm,
    ConfigError,
    IterationRecord,
    Problem,
    RangeViolation,
    RunResult,
    SolverConfig,
    StopReason,
    validate_config,
)
from .criticality import DualSolution, is_critical, jacobian_norm, psi, solve_dual
from .kernels import BACKEND
from .solver import run, run_baseline

__version__ = "0.1.0"
