"""Exact and smoothed Bellman backup operators.

The smoothed variants replace the hard per-state max over actions with a
log-sum-exp of configurable sharpness. The substitute overshoots the max by
at most ln(num_actions)/sharpness, and unlike the max it is differentiable,
which is what the Newton solver needs. Everything here uses the max-shifted
forms of log-sum-exp and softmax: the benchmark regime (Q entries around 20,
sharpness up to 35) would overflow exp() without the shift.
"""

from __future__ import annotations

import numpy as np

from .mdp import MDP, check_q_table, check_value_fn, expected_reward, value_from_q


def _check_sharpness(sharpness: float) -> float:
    sharpness = float(sharpness)
    if not np.isfinite(sharpness) or sharpness <= 0.0:
        raise ValueError(f"sharpness must be a positive finite real, got {sharpness!r}")
    return sharpness


def _check_vector(x: np.ndarray) -> np.ndarray:
    x = np.asarray(x, dtype=np.float64)
    if x.ndim != 1:
        raise ValueError(f"expected a 1-d vector, got shape {x.shape}")
    if x.size == 0:
        raise ValueError("empty input")
    if not np.isfinite(x).all():
        raise ValueError("input contains non-finite entries")
    return x


def log_sum_exp(x: np.ndarray, sharpness: float) -> float:
    """Smooth upper bound of max(x): log(sum_i exp(sharpness*x_i)) / sharpness.

    Computed as ``m + log(sum exp(sharpness*(x - m)))/sharpness`` with
    ``m = max(x)``, so the result is finite for any finite input.
    """
    x = _check_vector(x)
    sharpness = _check_sharpness(sharpness)
    m = x.max()
    return float(m + np.log(np.exp(sharpness * (x - m)).sum()) / sharpness)


def softmax(x: np.ndarray, sharpness: float) -> np.ndarray:
    """Normalized exponential weights exp(sharpness*x_i) / sum_b exp(sharpness*x_b).

    This is the gradient of :func:`log_sum_exp` in x; entries are nonnegative
    and sum to 1. Max-shifted for overflow safety.
    """
    x = _check_vector(x)
    sharpness = _check_sharpness(sharpness)
    w = np.exp(sharpness * (x - x.max()))
    return w / w.sum()


def _row_log_sum_exp(q: np.ndarray, sharpness: float) -> np.ndarray:
    """Per-state log-sum-exp over the action axis of a (S, A) table."""
    m = q.max(axis=1, keepdims=True)
    return (m + np.log(np.exp(sharpness * (q - m)).sum(axis=1, keepdims=True)) / sharpness)[:, 0]


def _row_softmax(q: np.ndarray, sharpness: float) -> np.ndarray:
    """Per-state softmax weights over the action axis of a (S, A) table."""
    w = np.exp(sharpness * (q - q.max(axis=1, keepdims=True)))
    return w / w.sum(axis=1, keepdims=True)


def bellman_v(mdp: MDP, values: np.ndarray) -> np.ndarray:
    """One exact Bellman optimality backup on state values:
    max_a { r(i,a) + gamma * sum_j p(j|i,a) * values[j] }."""
    values = check_value_fn(mdp, values)
    lookahead = expected_reward(mdp) + mdp.gamma * (mdp.transitions @ values)
    return lookahead.max(axis=1)


def bellman_q(mdp: MDP, q: np.ndarray) -> np.ndarray:
    """One exact Bellman backup on a Q-table:
    r(i,a) + gamma * sum_j p(j|i,a) * max_b q[j,b]."""
    q = check_q_table(mdp, q)
    return expected_reward(mdp) + mdp.gamma * (mdp.transitions @ value_from_q(q))


def smoothed_bellman_q(mdp: MDP, q: np.ndarray, sharpness: float) -> np.ndarray:
    """Bellman backup with the max over next actions replaced by log-sum-exp.

    Entrywise it dominates :func:`bellman_q` by at most
    ``gamma * ln(num_actions) / sharpness``.
    """
    q = check_q_table(mdp, q)
    sharpness = _check_sharpness(sharpness)
    smooth_values = _row_log_sum_exp(q, sharpness)
    return expected_reward(mdp) + mdp.gamma * (mdp.transitions @ smooth_values)


def smoothed_bellman_jacobian(mdp: MDP, q: np.ndarray, sharpness: float) -> np.ndarray:
    """Jacobian of :func:`smoothed_bellman_q` at ``q``, as a dense
    (S*A, S*A) matrix.

    Row flat(i,a) = i*A + a, column flat(k,c) = k*A + c, and the entry is
    ``gamma * p(k|i,a) * softmax(q[k,:])[c]``. Every entry is nonnegative
    and every row sums to gamma, i.e. the matrix is gamma times a
    row-stochastic matrix.
    """
    q = check_q_table(mdp, q)
    sharpness = _check_sharpness(sharpness)
    weights = _row_softmax(q, sharpness)
    n = mdp.num_states * mdp.num_actions
    jac = mdp.gamma * np.einsum("iak,kc->iakc", mdp.transitions, weights)
    return jac.reshape(n, n)
