"""Iterative MDP solvers: value iteration, Q-value iteration, and the
second-order (Newton) scheme on the smoothed Bellman fixed-point equation.

All solvers share the same loop discipline: apply one backup, record the
max-norm residual between consecutive iterates (plus an optional error
against a caller-supplied reference), and stop early once the residual
drops to the configured tolerance. A tolerance of 0 disables early
stopping, which reproduces fixed-iteration-budget benchmark runs.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .linalg import max_norm, solve_linear
from .mdp import (
    MDP,
    check_mdp,
    check_policy,
    check_q_table,
    check_value_fn,
    expected_reward,
    value_from_q,
)
from .operators import (
    _check_sharpness,
    bellman_q,
    bellman_v,
    smoothed_bellman_jacobian,
    smoothed_bellman_q,
)

# Iterates beyond this magnitude abort the run: better a loud failure than a
# NaN-poisoned trace.
DIVERGENCE_LIMIT = 1e12


class SolverDivergenceError(RuntimeError):
    """An iterate overflowed or became non-finite."""


@dataclass(frozen=True)
class SolverConfig:
    """Iteration budget and stopping rule shared by all solvers.

    ``tolerance`` is the early-stop threshold on the residual
    ``max|x_n - x_{n-1}|``; 0 disables early stopping. ``sharpness`` is
    only consulted by the second-order solver.
    """

    max_iters: int
    tolerance: float = 0.0
    sharpness: float | None = None

    def __post_init__(self) -> None:
        if int(self.max_iters) < 1:
            raise ValueError(f"max_iters must be >= 1, got {self.max_iters}")
        if not (self.tolerance >= 0.0):
            raise ValueError(f"tolerance must be >= 0, got {self.tolerance}")
        if self.sharpness is not None:
            _check_sharpness(self.sharpness)


@dataclass(frozen=True)
class IterationRecord:
    iteration: int
    residual: float
    error: float | None
    wall_time_ns: int


@dataclass(frozen=True)
class RunTrace:
    """Per-iteration records plus the final iterate of one solver run.

    ``final`` is the last iterate: a (S,) value vector for value iteration,
    a (S, A) Q-table for the Q-flavored solvers. ``converged`` is True iff
    the residual reached the tolerance before the iteration budget ran out.
    """

    records: tuple[IterationRecord, ...]
    final: np.ndarray
    converged: bool

    @property
    def residuals(self) -> np.ndarray:
        return np.array([r.residual for r in self.records])

    @property
    def errors(self) -> np.ndarray:
        return np.array(
            [np.nan if r.error is None else r.error for r in self.records]
        )


def _error_against(
    iterate: np.ndarray,
    reference_q: np.ndarray | None,
    reference_values: np.ndarray | None,
) -> float | None:
    if reference_q is not None:
        return max_norm(iterate - reference_q)
    if reference_values is not None:
        values = iterate if iterate.ndim == 1 else value_from_q(iterate)
        return max_norm(values - reference_values)
    return None


def _run_fixed_point(
    step: Callable[[np.ndarray], np.ndarray],
    x0: np.ndarray,
    cfg: SolverConfig,
    reference_q: np.ndarray | None = None,
    reference_values: np.ndarray | None = None,
) -> RunTrace:
    records: list[IterationRecord] = []
    x = x0
    converged = False
    for n in range(1, int(cfg.max_iters) + 1):
        start = time.perf_counter_ns()
        x_new = step(x)
        elapsed = time.perf_counter_ns() - start
        if not np.isfinite(x_new).all() or np.abs(x_new).max() > DIVERGENCE_LIMIT:
            raise SolverDivergenceError(
                f"iterate diverged at iteration {n} "
                f"(max magnitude {np.abs(x_new).max():.3e})"
            )
        residual = max_norm(x_new - x)
        records.append(
            IterationRecord(
                iteration=n,
                residual=residual,
                error=_error_against(x_new, reference_q, reference_values),
                wall_time_ns=elapsed,
            )
        )
        x = x_new
        if cfg.tolerance > 0.0 and residual <= cfg.tolerance:
            converged = True
            break
    return RunTrace(records=tuple(records), final=x, converged=converged)


def value_iteration(
    mdp: MDP,
    v0: np.ndarray,
    cfg: SolverConfig,
    reference_values: np.ndarray | None = None,
) -> RunTrace:
    """Repeated exact Bellman backups on a state-value vector."""
    check_mdp(mdp)
    v0 = check_value_fn(mdp, v0)
    if reference_values is not None:
        reference_values = check_value_fn(mdp, reference_values)
    return _run_fixed_point(
        lambda v: bellman_v(mdp, v), v0, cfg, reference_values=reference_values
    )


def q_value_iteration(
    mdp: MDP,
    q0: np.ndarray,
    cfg: SolverConfig,
    reference_q: np.ndarray | None = None,
    reference_values: np.ndarray | None = None,
) -> RunTrace:
    """Repeated exact Bellman backups on a Q-table."""
    check_mdp(mdp)
    q0 = check_q_table(mdp, q0)
    if reference_q is not None:
        reference_q = check_q_table(mdp, reference_q)
    if reference_values is not None:
        reference_values = check_value_fn(mdp, reference_values)
    return _run_fixed_point(
        lambda q: bellman_q(mdp, q), q0, cfg, reference_q, reference_values
    )


def newton_step(mdp: MDP, q: np.ndarray, sharpness: float) -> np.ndarray:
    """One Newton update on the root problem F(Q) = Q - smoothed_bellman_q(Q).

    Builds the dense Jacobian of the smoothed backup at ``q`` and solves
    ``(I - J) y = q - smoothed_bellman_q(q)``; the update is ``q - y``.
    The system is solved, never inverted.
    """
    q = check_q_table(mdp, q)
    backed_up = smoothed_bellman_q(mdp, q, sharpness)
    jac = smoothed_bellman_jacobian(mdp, q, sharpness)
    coeff = np.eye(jac.shape[0]) - jac
    y = solve_linear(coeff, (q - backed_up).ravel())
    return q - y.reshape(q.shape)


def second_order_value_iteration(
    mdp: MDP,
    q0: np.ndarray,
    cfg: SolverConfig,
    reference_q: np.ndarray | None = None,
    reference_values: np.ndarray | None = None,
) -> RunTrace:
    """Newton iteration on the smoothed Bellman fixed-point equation.

    Requires ``cfg.sharpness``. Converges to the fixed point of the
    smoothed backup from any starting table; near the fixed point the
    error contracts quadratically.
    """
    check_mdp(mdp)
    q0 = check_q_table(mdp, q0)
    if cfg.sharpness is None:
        raise ValueError("second_order_value_iteration requires cfg.sharpness")
    if reference_q is not None:
        reference_q = check_q_table(mdp, reference_q)
    if reference_values is not None:
        reference_values = check_value_fn(mdp, reference_values)
    sharpness = float(cfg.sharpness)
    return _run_fixed_point(
        lambda q: newton_step(mdp, q, sharpness), q0, cfg, reference_q, reference_values
    )


def policy_evaluation(mdp: MDP, policy: np.ndarray) -> np.ndarray:
    """Exact discounted value of a fixed deterministic policy.

    Solves ``(I - gamma * P_pi) V = r_pi`` where ``P_pi`` and ``r_pi`` are
    the transition matrix and expected rewards under the policy. Used as
    the optimal-value oracle: evaluate the greedy policy of a converged
    Q-table.
    """
    check_mdp(mdp)
    policy = check_policy(mdp, policy)
    states = np.arange(mdp.num_states)
    p_pi = mdp.transitions[states, policy]
    r_pi = expected_reward(mdp)[states, policy]
    coeff = np.eye(mdp.num_states) - mdp.gamma * p_pi
    return solve_linear(coeff, r_pi)
