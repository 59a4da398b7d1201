import numpy as np
import pytest

from nmmg.configfile import load_config, parse_config_text
from nmmg.core import (
    Algorithm,
    ConfigError,
    DimensionMismatch,
    IndexMismatch,
    IterationRecord,
    Problem,
    SolverConfig,
    record_iteration,
    validate_config,
)


def _record(k):
    z = np.zeros(2)
    return IterationRecord(k=k, x=z, F=z, v_norm=1.0, theta=-0.5, psi_v=-1.0, psi_d=-1.0,
                           gamma=1.0, d=z, alpha=1.0, ls_trials=0, reference=z)


def test_valid_config_accepted():
    cfg = SolverConfig(rho=0.5, delta=0.5, eta_min=0.0, eta_max=0.85)
    assert validate_config(cfg) is cfg


def test_rho_boundary_rejected():
    with pytest.raises(ConfigError) as err:
        validate_config(SolverConfig(rho=1.0))
    assert [v.field for v in err.value.violations] == ["rho"]


def test_lam_ordering_rejected():
    with pytest.raises(ConfigError) as err:
        validate_config(SolverConfig(lam3=0.6, lam4=0.5))
    assert any("lam3 <= lam4" in v.constraint for v in err.value.violations)


def test_all_violations_reported():
    bad = SolverConfig(rho=0.0, delta=1.5, N=-1, gamma=0.0)
    fields = {v.field for v in bad.violations()}
    assert {"rho", "delta", "N", "gamma"} <= fields


def test_eta_max_one_needs_unsafe_flag():
    assert SolverConfig(eta_max=1.0).violations()
    assert not SolverConfig(eta_max=1.0, unsafe_eta=True).violations()


def test_non_finite_parameter_rejected():
    assert any(v.field == "config" for v in SolverConfig(rho=float("nan")).violations())


def test_algorithm_aliases():
    assert Algorithm.parse("Average") is Algorithm.AVERAGE_TYPE
    assert Algorithm.parse("max_type") is Algorithm.MAX_TYPE
    assert SolverConfig(algorithm="sd").algorithm is Algorithm.STEEPEST_DESCENT
    with pytest.raises(ValueError):
        Algorithm.parse("newton")


def test_record_iteration_appends():
    trace = record_iteration([], _record(0))
    assert len(trace) == 1
    trace = [_record(i) for i in range(3)]
    assert len(record_iteration(trace, _record(3))) == 4


def test_record_iteration_index_gap():
    trace = [_record(i) for i in range(3)]
    with pytest.raises(IndexMismatch):
        record_iteration(trace, _record(5))


def test_problem_shape_checks():
    p = Problem("bad", n=2, m=2, eval_F=lambda x: np.zeros(3), eval_J=lambda x: np.zeros((2, 3)))
    with pytest.raises(DimensionMismatch):
        p.F(np.zeros(2))
    with pytest.raises(DimensionMismatch):
        p.J(np.zeros(2))


def test_config_file_parsing(tmp_path):
    text = "# comment\nrho = 1e-3\neta-max = 0.5  # trailing\nalgorithm = max\nzero_beta = yes\n\n"
    assert parse_config_text(text) == {"rho": 1e-3, "eta_max": 0.5, "algorithm": "max",
                                       "zero_beta": True}
    path = tmp_path / "run.cfg"
    path.write_text(text)
    cfg = load_config(path, M=3, N=None)
    assert cfg.rho == 1e-3 and cfg.algorithm is Algorithm.MAX_TYPE and cfg.M == 3 and cfg.N == 5


def test_config_file_unknown_key():
    with pytest.raises(KeyError):
        parse_config_text("colour = blue\n")
    with pytest.raises(ValueError):
        parse_config_text("just words\n")
