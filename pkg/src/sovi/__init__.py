"""Solvers and benchmarks for finite discounted MDPs.

The centerpiece is a second-order (Newton) value iteration: the hard max in
the Bellman backup is replaced by a log-sum-exp smooth max, and the
resulting differentiable fixed-point equation is solved with Newton's
method. First-order value iteration and Q-value iteration are included as
baselines, together with a seeded benchmark harness that reproduces
error-vs-iteration comparisons across many random MDPs.
"""

from .bench import (
    AlgorithmSpec,
    ErrorCurve,
    ExperimentResult,
    ExperimentSpec,
    average_error,
    certified_optimal_values,
    run_experiment,
    write_curves_csv,
    write_summary_json,
    write_trace_csv,
)
from .estimators import QValueIteration, SecondOrderValueIteration, ValueIteration
from .generator import RNG_NAME, GeneratorConfig, random_mdp, random_q0
from .io import load_mdp, load_q_table, save_mdp, save_q_table
from .linalg import SingularSystemError, max_norm, solve_linear
from .mdp import (
    MDP,
    ValidationReport,
    check_mdp,
    check_policy,
    check_q_table,
    check_value_fn,
    expected_reward,
    greedy_policy,
    q_from_values,
    validate_mdp,
    value_from_q,
)
from .operators import (
    bellman_q,
    bellman_v,
    log_sum_exp,
    smoothed_bellman_jacobian,
    smoothed_bellman_q,
    softmax,
)
from .solvers import (
    IterationRecord,
    RunTrace,
    SolverConfig,
    SolverDivergenceError,
    newton_step,
    policy_evaluation,
    q_value_iteration,
    second_order_value_iteration,
    value_iteration,
)

__version__ = "0.1.0"

__all__ = [
    "MDP",
    "AlgorithmSpec",
    "ErrorCurve",
    "ExperimentResult",
    "ExperimentSpec",
    "GeneratorConfig",
    "IterationRecord",
    "QValueIteration",
    "RNG_NAME",
    "RunTrace",
    "SecondOrderValueIteration",
    "SingularSystemError",
    "SolverConfig",
    "SolverDivergenceError",
    "ValidationReport",
    "ValueIteration",
    "average_error",
    "bellman_q",
    "bellman_v",
    "certified_optimal_values",
    "check_mdp",
    "check_policy",
    "check_q_table",
    "check_value_fn",
    "expected_reward",
    "greedy_policy",
    "load_mdp",
    "load_q_table",
    "log_sum_exp",
    "max_norm",
    "newton_step",
    "policy_evaluation",
    "q_from_values",
    "q_value_iteration",
    "random_mdp",
    "random_q0",
    "run_experiment",
    "save_mdp",
    "save_q_table",
    "second_order_value_iteration",
    "smoothed_bellman_jacobian",
    "smoothed_bellman_q",
    "softmax",
    "solve_linear",
    "validate_mdp",
    "value_from_q",
    "value_iteration",
    "write_curves_csv",
    "write_summary_json",
    "write_trace_csv",
]
