"""scikit-learn style estimator wrappers around the functional solvers.

Each estimator is configured with plain hyperparameters, fitted on an MDP
model, and afterwards exposes the solution as fitted attributes:
``values_`` (state values), ``policy_`` (greedy actions), ``q_table_``,
``trace_`` (the per-iteration run trace), ``n_iterations_``, and
``converged_``. ``predict(states)`` maps state indices to greedy actions,
so a fitted solver plugs into anything that speaks the estimator protocol
(``get_params`` / ``set_params`` / ``clone``).
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_is_fitted

from .mdp import MDP, check_mdp, greedy_policy, q_from_values, value_from_q
from .solvers import (
    RunTrace,
    SolverConfig,
    q_value_iteration,
    second_order_value_iteration,
    value_iteration,
)


class _BaseMDPSolver(BaseEstimator):
    """Shared fit/predict plumbing; subclasses supply ``_solve``."""

    def _solve(self, mdp: MDP, q0: np.ndarray) -> RunTrace:
        raise NotImplementedError

    def fit(self, mdp: MDP, initial_q: np.ndarray | None = None):
        """Solve the given MDP; ``initial_q`` defaults to all zeros."""
        check_mdp(mdp)
        if initial_q is None:
            initial_q = np.zeros((mdp.num_states, mdp.num_actions))
        trace = self._solve(mdp, np.asarray(initial_q, dtype=np.float64))
        q = trace.final if trace.final.ndim == 2 else q_from_values(mdp, trace.final)
        self.q_table_ = q
        self.values_ = value_from_q(q)
        self.policy_ = greedy_policy(q)
        self.trace_ = trace
        self.n_iterations_ = len(trace.records)
        self.converged_ = trace.converged
        return self

    def predict(self, states=None) -> np.ndarray:
        """Greedy action per state index; all states when ``states`` is None."""
        check_is_fitted(self, "policy_")
        if states is None:
            return self.policy_.copy()
        states = np.asarray(states, dtype=np.int64)
        return self.policy_[states]


class ValueIteration(_BaseMDPSolver):
    """First-order solver iterating the exact Bellman backup on state values."""

    def __init__(self, max_iters: int = 1000, tolerance: float = 1e-10):
        self.max_iters = max_iters
        self.tolerance = tolerance

    def _solve(self, mdp: MDP, q0: np.ndarray) -> RunTrace:
        cfg = SolverConfig(max_iters=self.max_iters, tolerance=self.tolerance)
        return value_iteration(mdp, value_from_q(q0), cfg)


class QValueIteration(_BaseMDPSolver):
    """First-order solver iterating the exact Bellman backup on a Q-table."""

    def __init__(self, max_iters: int = 1000, tolerance: float = 1e-10):
        self.max_iters = max_iters
        self.tolerance = tolerance

    def _solve(self, mdp: MDP, q0: np.ndarray) -> RunTrace:
        cfg = SolverConfig(max_iters=self.max_iters, tolerance=self.tolerance)
        return q_value_iteration(mdp, q0, cfg)


class SecondOrderValueIteration(_BaseMDPSolver):
    """Newton solver on the smoothed Bellman fixed-point equation.

    ``sharpness`` controls the log-sum-exp approximation of the max;
    the fitted values overshoot the optimal ones by at most
    ``gamma * ln(num_actions) / (sharpness * (1 - gamma))``.
    """

    def __init__(
        self, sharpness: float = 10.0, max_iters: int = 100, tolerance: float = 1e-10
    ):
        self.sharpness = sharpness
        self.max_iters = max_iters
        self.tolerance = tolerance

    def _solve(self, mdp: MDP, q0: np.ndarray) -> RunTrace:
        cfg = SolverConfig(
            max_iters=self.max_iters,
            tolerance=self.tolerance,
            sharpness=self.sharpness,
        )
        return second_order_value_iteration(mdp, q0, cfg)
