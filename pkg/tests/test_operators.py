import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from sovi import (
    MDP,
    bellman_q,
    bellman_v,
    log_sum_exp,
    max_norm,
    smoothed_bellman_jacobian,
    smoothed_bellman_q,
    softmax,
)
from sovi.solvers import SolverConfig, second_order_value_iteration

from conftest import self_loop_mdp, random_instance

# (1 + gamma*ln(2)/sharpness) / (1 - gamma) for gamma=0.9, sharpness=10:
# fixed point of the smoothed backup on the symmetric two-action self-loop.
SYMMETRIC_FIXED_POINT = 10.623832462503951


def reference_jacobian(mdp, q, sharpness, step=1e-6):
    """Central-difference oracle for the smoothed backup's Jacobian."""
    n = q.size
    jac = np.empty((n, n))
    for col in range(n):
        plus = q.ravel().copy()
        minus = q.ravel().copy()
        plus[col] += step
        minus[col] -= step
        delta = smoothed_bellman_q(mdp, plus.reshape(q.shape), sharpness) - \
            smoothed_bellman_q(mdp, minus.reshape(q.shape), sharpness)
        jac[:, col] = delta.ravel() / (2 * step)
    return jac


class TestLogSumExp:
    def test_equal_entries_closed_form(self):
        assert log_sum_exp(np.array([0.0, 0.0]), 1.0) == pytest.approx(math.log(2))
        for d in (2, 5, 9):
            for sharpness in (1.0, 7.5):
                x = np.full(d, 3.25)
                expected = 3.25 + math.log(d) / sharpness
                assert log_sum_exp(x, sharpness) == pytest.approx(expected, abs=1e-12)

    def test_single_entry_is_exact_identity(self):
        assert log_sum_exp(np.array([-17.3]), 4.0) == -17.3

    def test_against_direct_evaluation(self):
        # Direct (unshifted) evaluation is safe at these magnitudes and acts
        # as the independent oracle; value frozen from a 50-digit computation.
        direct = math.log(math.exp(10.0) + math.exp(20.0) + math.exp(30.0)) / 10.0
        result = log_sum_exp(np.array([1.0, 2.0, 3.0]), 10.0)
        assert result == pytest.approx(direct, abs=1e-12)
        assert result == pytest.approx(3.0000045400960277, abs=1e-12)

    def test_no_overflow_in_benchmark_regime(self):
        # sharpness * entry = 700 would overflow a naive exp().
        value = log_sum_exp(np.array([20.0, 10.0]), 35.0)
        assert np.isfinite(value)
        assert value == pytest.approx(20.0, abs=1e-12)

    def test_empty_input_rejected(self):
        with pytest.raises(ValueError, match="empty input"):
            log_sum_exp(np.array([]), 1.0)

    def test_bad_sharpness_rejected(self):
        for bad in (0.0, -2.0, np.nan, np.inf):
            with pytest.raises(ValueError, match="sharpness"):
                log_sum_exp(np.array([1.0]), bad)

    @given(
        st.lists(st.floats(-100.0, 100.0), min_size=1, max_size=10),
        st.sampled_from([1.0, 5.0, 10.0, 35.0]),
    )
    def test_gap_to_max_is_sandwiched(self, entries, sharpness):
        x = np.array(entries)
        gap = log_sum_exp(x, sharpness) - x.max()
        assert gap >= 0.0
        assert gap <= math.log(len(entries)) / sharpness + 1e-12


class TestSoftmax:
    def test_symmetry(self):
        np.testing.assert_allclose(softmax(np.array([4.2, 4.2]), 3.0), [0.5, 0.5])

    def test_saturation_without_overflow(self):
        w = softmax(np.array([0.0, -1000.0]), 1.0)
        assert w[0] == pytest.approx(1.0)
        assert w[1] == pytest.approx(0.0, abs=1e-300)

    def test_two_entry_hand_values(self):
        w = softmax(np.array([1.0, 2.0]), 1.0)
        np.testing.assert_allclose(
            w, [0.2689414213699951, 0.7310585786300049], atol=1e-12
        )

    def test_empty_rejected(self):
        with pytest.raises(ValueError, match="empty"):
            softmax(np.array([]), 1.0)

    @given(
        st.lists(st.floats(-50.0, 50.0), min_size=1, max_size=8),
        st.sampled_from([0.5, 1.0, 10.0, 35.0]),
    )
    def test_nonnegative_and_normalized(self, entries, sharpness):
        w = softmax(np.array(entries), sharpness)
        assert (w >= 0.0).all()
        assert abs(w.sum() - 1.0) <= 1e-12


class TestExactBellman:
    def test_value_backup_from_zero(self):
        m = self_loop_mdp(reward=1.0, gamma=0.9)
        np.testing.assert_allclose(bellman_v(m, np.array([0.0])), [1.0])

    def test_value_backup_fixed_point(self):
        # V* = r / (1 - gamma) = 10 for the unit-reward self-loop.
        m = self_loop_mdp(reward=1.0, gamma=0.9)
        np.testing.assert_allclose(bellman_v(m, np.array([10.0])), [10.0], atol=1e-12)

    def test_q_backup_zero_rewards(self):
        m = random_instance(seed=2)
        zeroed = MDP(m.transitions, np.zeros_like(m.rewards), m.gamma)
        q = np.zeros((4, 3))
        np.testing.assert_array_equal(bellman_q(zeroed, q), q)

    def test_q_backup_self_loop(self):
        m = self_loop_mdp(reward=1.0, gamma=0.9)
        q1 = bellman_q(m, np.array([[0.0]]))
        np.testing.assert_allclose(q1, [[1.0]])
        np.testing.assert_allclose(bellman_q(m, q1), [[1.9]], atol=1e-12)

    def test_dimension_mismatch(self):
        m = self_loop_mdp()
        with pytest.raises(ValueError):
            bellman_v(m, np.array([0.0, 0.0]))
        with pytest.raises(ValueError):
            bellman_q(m, np.zeros((2, 1)))

    def test_exact_operators_contract(self):
        rng = np.random.default_rng(42)
        for trial in range(25):
            m = random_instance(seed=100 + trial, num_states=5, num_actions=3)
            p = rng.uniform(-10, 10, size=(5, 3))
            q = rng.uniform(-10, 10, size=(5, 3))
            assert max_norm(bellman_q(m, p) - bellman_q(m, q)) <= \
                m.gamma * max_norm(p - q) + 1e-12
            u = rng.uniform(-10, 10, size=5)
            w = rng.uniform(-10, 10, size=5)
            assert max_norm(bellman_v(m, u) - bellman_v(m, w)) <= \
                m.gamma * max_norm(u - w) + 1e-12


class TestSmoothedBellman:
    def test_single_action_equals_exact_backup(self):
        m = random_instance(seed=9, num_states=5, num_actions=1)
        rng = np.random.default_rng(1)
        q = rng.uniform(-5, 5, size=(5, 1))
        np.testing.assert_array_equal(
            smoothed_bellman_q(m, q, 17.0), bellman_q(m, q)
        )

    def test_symmetric_two_action_fixed_point(self):
        m = self_loop_mdp(num_actions=2, reward=1.0, gamma=0.9)
        q = np.full((1, 2), SYMMETRIC_FIXED_POINT)
        np.testing.assert_allclose(smoothed_bellman_q(m, q, 10.0), q, atol=1e-12)

    def test_sandwiched_by_exact_backup(self):
        for trial in range(20):
            m = random_instance(seed=200 + trial, num_states=6, num_actions=4)
            rng = np.random.default_rng(trial)
            q = rng.uniform(-10, 10, size=(6, 4))
            sharpness = float(rng.uniform(1.0, 35.0))
            exact = bellman_q(m, q)
            smooth = smoothed_bellman_q(m, q, sharpness)
            assert (smooth >= exact - 1e-12).all()
            assert (smooth <= exact + m.gamma * math.log(4) / sharpness + 1e-12).all()

    def test_no_overflow_in_benchmark_regime(self):
        m = random_instance(seed=5, num_states=10, num_actions=5)
        rng = np.random.default_rng(5)
        q = rng.integers(10, 21, size=(10, 5)).astype(float)
        out = smoothed_bellman_q(m, q, 35.0)
        assert np.isfinite(out).all()


class TestJacobian:
    def test_uniform_softmax_two_actions(self):
        m = self_loop_mdp(num_actions=2, reward=1.0, gamma=0.9)
        jac = smoothed_bellman_jacobian(m, np.array([[3.0, 3.0]]), 10.0)
        np.testing.assert_allclose(jac, np.full((2, 2), 0.45), atol=1e-14)

    def test_single_action_is_discount(self):
        m = self_loop_mdp(num_actions=1, reward=1.0, gamma=0.9)
        jac = smoothed_bellman_jacobian(m, np.array([[4.0]]), 3.0)
        np.testing.assert_allclose(jac, [[0.9]], atol=1e-15)

    def test_matches_finite_differences(self):
        m = random_instance(seed=31, num_states=3, num_actions=2)
        rng = np.random.default_rng(31)
        q = rng.uniform(-5, 5, size=(3, 2))
        jac = smoothed_bellman_jacobian(m, q, 5.0)
        fd = reference_jacobian(m, q, 5.0, step=1e-6)
        assert max_norm(jac - fd) <= 1e-5

    def test_rows_sum_to_discount_and_entries_nonnegative(self):
        for trial in range(30):
            m = random_instance(
                seed=300 + trial, num_states=5, num_actions=4,
                gamma=[0.5, 0.9, 0.99][trial % 3],
            )
            rng = np.random.default_rng(trial)
            q = rng.uniform(-40, 40, size=(5, 4))
            jac = smoothed_bellman_jacobian(m, q, float(rng.uniform(0.5, 35.0)))
            assert jac.min() >= 0.0
            np.testing.assert_allclose(jac.sum(axis=1), m.gamma, atol=1e-10)

    def test_flattening_is_row_major_by_state(self):
        # State 0 of this 2-state MDP moves to state 1 with certainty, so the
        # ((0,a),(1,c)) block must carry all the weight of rows flat(0,a).
        transitions = np.zeros((2, 2, 2))
        transitions[0, :, 1] = 1.0
        transitions[1, :, 0] = 1.0
        m = MDP(transitions, np.zeros((2, 2, 2)), gamma=0.8)
        q = np.array([[0.0, 0.0], [1.0, 1.0]])
        jac = smoothed_bellman_jacobian(m, q, 2.0)
        np.testing.assert_allclose(jac[0, 2:], [0.4, 0.4], atol=1e-14)
        np.testing.assert_allclose(jac[0, :2], [0.0, 0.0], atol=1e-14)


class TestSmoothedContraction:
    def test_contraction_on_random_instances(self):
        rng = np.random.default_rng(77)
        for trial in range(50):
            gamma = [0.5, 0.9, 0.99][trial % 3]
            m = random_instance(seed=400 + trial, num_states=6, num_actions=4, gamma=gamma)
            p = rng.uniform(-20, 20, size=(6, 4))
            q = rng.uniform(-20, 20, size=(6, 4))
            sharpness = float(rng.uniform(0.5, 35.0))
            lhs = max_norm(
                smoothed_bellman_q(m, p, sharpness) - smoothed_bellman_q(m, q, sharpness)
            )
            assert lhs <= gamma * max_norm(p - q) + 1e-12


def test_sharper_smoothing_tightens_the_fixed_point_gap():
    # Soft check only: the O(1/sharpness) bound guarantees the trend in the
    # limit, not monotonicity per instance, so the observed fraction is
    # reported rather than asserted.
    monotone = 0
    trials = 10
    for trial in range(trials):
        m = random_instance(seed=500 + trial, num_states=6, num_actions=4)
        exact_cfg = SolverConfig(max_iters=100_000, tolerance=1e-12)
        from sovi import q_value_iteration

        q_star = q_value_iteration(m, np.zeros((6, 4)), exact_cfg).final
        gaps = []
        for sharpness in (5.0, 10.0, 20.0):
            cfg = SolverConfig(max_iters=100, tolerance=1e-12, sharpness=sharpness)
            fix = second_order_value_iteration(m, q_star, cfg).final
            gaps.append(max_norm(fix - q_star))
        assert all(np.isfinite(g) for g in gaps)
        if gaps[0] >= gaps[1] >= gaps[2]:
            monotone += 1
    print(f"fixed-point gap monotone in sharpness on {monotone}/{trials} instances")
