"""Randomized property suites behind the ``verify`` CLI subcommand.

Each suite draws seeded random instances, checks one of the library's core
guarantees, and returns a list of human-readable violations (empty when the
property held everywhere):

* log-sum-exp gap: the smooth max overshoots the hard max by an amount in
  [0, ln(d)/sharpness];
* contraction: the smoothed backup contracts max-norm distances by gamma;
* Jacobian: nonnegative entries, rows summing to gamma, agreement with
  central finite differences of the smoothed backup;
* fixed-point gap: the smoothed and exact fixed points differ by at most
  gamma * ln(A) / (sharpness * (1 - gamma)).
"""

from __future__ import annotations

import math

import numpy as np

from .generator import GeneratorConfig, random_mdp
from .linalg import max_norm
from .operators import log_sum_exp, smoothed_bellman_jacobian, smoothed_bellman_q
from .solvers import SolverConfig, q_value_iteration, second_order_value_iteration

DEFAULT_SHARPNESS_GRID = (1.0, 5.0, 10.0, 35.0)


def finite_difference_jacobian(mdp, q, sharpness: float, step: float = 1e-6) -> np.ndarray:
    """Central-difference Jacobian of the smoothed backup, column by column."""
    q = np.asarray(q, dtype=np.float64)
    n = q.size
    jac = np.empty((n, n))
    flat = q.ravel()
    for col in range(n):
        plus = flat.copy()
        plus[col] += step
        minus = flat.copy()
        minus[col] -= step
        diff = smoothed_bellman_q(mdp, plus.reshape(q.shape), sharpness) - \
            smoothed_bellman_q(mdp, minus.reshape(q.shape), sharpness)
        jac[:, col] = diff.ravel() / (2.0 * step)
    return jac


def check_log_sum_exp_gap(
    seed: int,
    trials: int = 10_000,
    max_dim: int = 10,
    magnitude: float = 100.0,
    sharpness_grid: tuple[float, ...] = DEFAULT_SHARPNESS_GRID,
    slack: float = 1e-12,
) -> list[str]:
    rng = np.random.default_rng(seed)
    violations = []
    for t in range(trials):
        d = int(rng.integers(2, max_dim + 1))
        x = rng.uniform(-magnitude, magnitude, size=d)
        sharpness = sharpness_grid[t % len(sharpness_grid)]
        gap = log_sum_exp(x, sharpness) - x.max()
        bound = math.log(d) / sharpness
        if gap < -slack or gap > bound + slack:
            violations.append(
                f"trial {t}: gap {gap:.3e} outside [0, ln({d})/{sharpness:g} = {bound:.3e}]"
            )
    return violations


def check_contraction(
    seed: int,
    trials: int = 1000,
    max_states: int = 10,
    max_actions: int = 5,
    gammas: tuple[float, ...] = (0.5, 0.9, 0.99),
    slack: float = 1e-12,
) -> list[str]:
    rng = np.random.default_rng(seed)
    violations = []
    for t in range(trials):
        num_states = int(rng.integers(2, max_states + 1))
        num_actions = int(rng.integers(1, max_actions + 1))
        gamma = gammas[t % len(gammas)]
        mdp = random_mdp(
            GeneratorConfig(
                num_states=num_states,
                num_actions=num_actions,
                gamma=gamma,
                seed=int(rng.integers(0, 2**63)),
            )
        )
        sharpness = float(rng.uniform(0.5, 35.0))
        p = rng.uniform(-10.0, 10.0, size=(num_states, num_actions))
        q = rng.uniform(-10.0, 10.0, size=(num_states, num_actions))
        lhs = max_norm(
            smoothed_bellman_q(mdp, p, sharpness) - smoothed_bellman_q(mdp, q, sharpness)
        )
        rhs = gamma * max_norm(p - q) + slack
        if lhs > rhs:
            violations.append(f"trial {t}: |UP - UQ| = {lhs:.3e} > gamma*|P - Q| = {rhs:.3e}")
    return violations


def check_jacobian(
    seed: int,
    instances: int = 100,
    row_sum_tol: float = 1e-10,
    fd_tol: float = 1e-5,
    fd_step: float = 1e-6,
) -> list[str]:
    rng = np.random.default_rng(seed)
    violations = []
    for t in range(instances):
        num_states = int(rng.integers(2, 7))
        num_actions = int(rng.integers(2, 5))
        gamma = float(rng.choice([0.5, 0.9, 0.99]))
        mdp = random_mdp(
            GeneratorConfig(
                num_states=num_states,
                num_actions=num_actions,
                gamma=gamma,
                seed=int(rng.integers(0, 2**63)),
            )
        )
        # Finite differences are only trustworthy at moderate magnitudes.
        q = rng.uniform(-10.0, 10.0, size=(num_states, num_actions))
        sharpness = float(rng.uniform(0.5, 10.0))
        jac = smoothed_bellman_jacobian(mdp, q, sharpness)
        if jac.min() < 0.0:
            violations.append(f"instance {t}: negative Jacobian entry {jac.min():.3e}")
        row_gap = np.abs(jac.sum(axis=1) - gamma).max()
        if row_gap > row_sum_tol:
            violations.append(
                f"instance {t}: row sums deviate from gamma by {row_gap:.3e}"
            )
        fd = finite_difference_jacobian(mdp, q, sharpness, step=fd_step)
        fd_gap = max_norm(jac - fd)
        if fd_gap > fd_tol:
            violations.append(
                f"instance {t}: finite-difference mismatch {fd_gap:.3e} > {fd_tol:g}"
            )
    return violations


def check_fixed_point_gap(
    seed: int,
    instances: int = 30,
    sharpness_grid: tuple[float, ...] = (5.0, 10.0, 35.0),
    num_states: int = 10,
    num_actions: int = 5,
    gamma: float = 0.9,
    slack: float = 1e-8,
) -> list[str]:
    rng = np.random.default_rng(seed)
    violations = []
    solve_cfg = SolverConfig(max_iters=100_000, tolerance=1e-12)
    for t in range(instances):
        mdp = random_mdp(
            GeneratorConfig(
                num_states=num_states,
                num_actions=num_actions,
                gamma=gamma,
                seed=int(rng.integers(0, 2**63)),
            )
        )
        exact = q_value_iteration(mdp, np.zeros((num_states, num_actions)), solve_cfg)
        for sharpness in sharpness_grid:
            newton_cfg = SolverConfig(max_iters=200, tolerance=1e-12, sharpness=sharpness)
            smooth = second_order_value_iteration(mdp, exact.final, newton_cfg)
            gap = max_norm(exact.final - smooth.final)
            bound = gamma * math.log(num_actions) / (sharpness * (1.0 - gamma))
            if gap > bound + slack:
                violations.append(
                    f"instance {t}, sharpness {sharpness:g}: gap {gap:.6e} exceeds "
                    f"bound {bound:.6e}"
                )
    return violations


def run_all(seed: int) -> dict[str, list[str]]:
    """Run every suite with its default sizes; keyed by suite name."""
    return {
        "log_sum_exp_gap": check_log_sum_exp_gap(seed),
        "contraction": check_contraction(seed),
        "jacobian": check_jacobian(seed),
        "fixed_point_gap": check_fixed_point_gap(seed),
    }
