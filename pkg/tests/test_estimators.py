import math

import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError

from sovi import QValueIteration, SecondOrderValueIteration, ValueIteration

from conftest import self_loop_mdp, random_instance


def test_get_params_round_trip():
    est = SecondOrderValueIteration(sharpness=35.0, max_iters=20, tolerance=1e-9)
    params = est.get_params()
    assert params == {"sharpness": 35.0, "max_iters": 20, "tolerance": 1e-9}
    cloned = clone(est)
    assert cloned.get_params() == params
    cloned.set_params(sharpness=5.0)
    assert cloned.sharpness == 5.0


def test_value_iteration_solves_self_loop():
    m = self_loop_mdp(reward=1.0, gamma=0.9)
    est = ValueIteration(max_iters=2000, tolerance=1e-12).fit(m)
    assert est.converged_
    assert est.values_[0] == pytest.approx(10.0, abs=1e-9)
    assert est.policy_[0] == 0
    assert est.q_table_.shape == (1, 1)
    assert est.n_iterations_ == len(est.trace_.records)


def test_estimators_agree_on_random_instance():
    m = random_instance(seed=77, num_states=6, num_actions=4)
    vi = ValueIteration(max_iters=5000, tolerance=1e-12).fit(m)
    qvi = QValueIteration(max_iters=5000, tolerance=1e-12).fit(m)
    np.testing.assert_allclose(vi.values_, qvi.values_, atol=1e-9)
    np.testing.assert_array_equal(vi.policy_, qvi.policy_)


def test_newton_estimator_is_near_optimal():
    m = random_instance(seed=78, num_states=6, num_actions=4)
    exact = QValueIteration(max_iters=5000, tolerance=1e-12).fit(m)
    newton = SecondOrderValueIteration(sharpness=35.0, tolerance=1e-11).fit(m)
    assert newton.converged_
    gap_bound = m.gamma * math.log(4) / (35.0 * (1.0 - m.gamma))
    assert np.abs(newton.values_ - exact.values_).max() <= gap_bound + 1e-8
    # far fewer iterations than the first-order baseline
    assert newton.n_iterations_ < exact.n_iterations_ / 10


def test_predict_maps_states_to_greedy_actions():
    m = random_instance(seed=79, num_states=5, num_actions=3)
    est = QValueIteration(tolerance=1e-10).fit(m)
    actions = est.predict()
    assert actions.shape == (5,)
    np.testing.assert_array_equal(est.predict([0, 0, 4]), actions[[0, 0, 4]])


def test_predict_before_fit_raises():
    with pytest.raises(NotFittedError):
        ValueIteration().predict()


def test_fit_accepts_initial_q():
    m = random_instance(seed=80, num_states=4, num_actions=2)
    q0 = np.full((4, 2), 15.0)
    est = SecondOrderValueIteration(sharpness=10.0, tolerance=1e-10).fit(m, initial_q=q0)
    assert est.converged_
