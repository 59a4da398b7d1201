import numpy as np
import pytest

from nmmg.core import LineSearchFail, SolverConfig
from nmmg.linesearch import (
    AverageState,
    MaxWindow,
    average_type_search,
    initial_step,
    max_type_search,
    update_average_state,
    window_push,
)

CFG = SolverConfig()


def half_norm(x):
    return np.array([0.5 * float(x @ x)])


def test_max_type_full_step():
    x = np.array([1.0, 0.0])
    res = max_type_search(half_norm, x, np.array([-1.0, 0.0]), -1.0,
                          MaxWindow.start(10, half_norm(x)), CFG)
    assert res.alpha == 1.0 and res.trials == 0
    np.testing.assert_array_equal(res.F_new, [0.0])


def test_max_type_two_objective_ladder():
    def F(x):
        return np.array([x[0] ** 2, (x[0] - 2) ** 2])

    x, d, psi_d = np.array([3.0]), np.array([-2.0]), -4.0
    # independent enumeration of the ladder 1, 1/2, 1/4, ...
    expect = None
    for h in range(20):
        a = 0.5 ** h
        if np.all(F(x + a * d) <= F(x) + 1e-4 * a * psi_d):
            expect = (a, h)
            break
    res = max_type_search(F, x, d, psi_d, MaxWindow.start(0, F(x)), CFG)
    assert (res.alpha, res.trials) == expect == (0.5, 1)


def test_window_max_is_reference():
    w = MaxWindow.start(2, [5.0, 0.0])
    w = window_push(w, [1.0, 3.0])
    np.testing.assert_array_equal(w.max(), [5.0, 3.0])
    # with M = 0 only the current value counts, so the plain Armijo test applies
    w0 = window_push(MaxWindow.start(0, [5.0, 0.0]), [1.0, 3.0])
    np.testing.assert_array_equal(w0.max(), [1.0, 3.0])


def test_window_push_examples():
    w = window_push(MaxWindow.start(2, [0.0]), [1.0])
    assert [v[0] for v in w.values] == [1.0, 0.0]
    w = window_push(MaxWindow(1, (np.array([1.0]), np.array([0.0]))), [2.0])
    assert [v[0] for v in w.values] == [2.0, 1.0]
    w = window_push(MaxWindow(0, (np.array([7.0]),)), [3.0])
    assert [v[0] for v in w.values] == [3.0]
    with pytest.raises(ValueError):
        window_push(w, [np.inf])


def test_max_type_failure():
    def F(x):
        return np.array([1.0])

    cfg = CFG.replace(max_ls_trials=5)
    with pytest.raises(LineSearchFail) as err:
        max_type_search(F, np.zeros(1), np.ones(1), -1.0, MaxWindow.start(0, [1.0]), cfg)
    assert err.value.trials == 5


def test_average_type_unit_step():
    def F(x):
        return np.array([0.5 * x[0] ** 2])

    x, d = np.array([1.0]), np.array([-1.0])
    res = average_type_search(F, x, d, -1.0, AverageState.start(F(x)), CFG)
    assert (res.alpha, res.trials) == (1.0, 0)


def test_initial_step_scaling():
    d = np.array([3.0, -4.0])
    assert initial_step(-float(d @ d), d) == 1.0
    assert initial_step(-5.0, d) == pytest.approx(0.2)


def test_average_type_ladder():
    def F(x):
        return np.array([x[0] ** 2, (x[0] - 2) ** 2])

    x, d, psi_d = np.array([3.0]), np.array([-2.0]), -4.0
    res = average_type_search(F, x, d, psi_d, AverageState.start(F(x)), CFG.replace(delta=0.3))
    tau = 1.0
    assert res.ladder == [tau * 0.3 ** h for h in range(res.trials + 1)]
    assert np.all(res.F_new <= F(x) + 1e-4 * res.alpha * psi_d)


def test_update_average_example():
    st = update_average_state(AverageState(1.0, np.array([4.0])), np.array([2.0]), 0.5)
    assert st.q == 1.5
    assert st.c[0] == pytest.approx(8.0 / 3.0, rel=1e-15)


def test_update_eta_zero_tracks_latest():
    st = update_average_state(AverageState(3.0, np.array([4.0, 1.0])), np.array([2.0, 0.5]), 0.0)
    assert st.q == 1.0
    np.testing.assert_array_equal(st.c, [2.0, 0.5])


def test_update_eta_one_is_running_mean(rng):
    Fs = rng.normal(size=(20, 3))
    st = AverageState.start(Fs[0])
    for k in range(1, 20):
        st = update_average_state(st, Fs[k], 1.0)
        assert st.q == k + 1
        np.testing.assert_allclose(st.c, Fs[: k + 1].mean(axis=0), rtol=1e-12, atol=1e-14)
