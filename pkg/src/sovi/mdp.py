"""Finite discounted MDP model, validation helpers, and exact derived quantities."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

# Absolute tolerance for transition-row normalization; loose enough to accept
# probabilities that went through a serialize/deserialize round trip.
PROB_ROW_ATOL = 1e-9


@dataclass(frozen=True)
class MDP:
    """Finite discounted MDP with dense transition and reward tensors.

    ``transitions[i, a, j]`` is the probability of landing in state ``j``
    after taking action ``a`` in state ``i``; ``rewards[i, a, j]`` is the
    reward collected on that transition. ``gamma`` is the discount factor.

    Instances are immutable: both tensors are copied on construction and
    marked read-only, so an MDP can be shared freely across concurrent
    solver runs. The constructor only enforces structural coherence
    (shapes); value-level invariants are checked by :func:`validate_mdp`.
    """

    transitions: np.ndarray
    rewards: np.ndarray
    gamma: float

    def __post_init__(self) -> None:
        transitions = np.array(self.transitions, dtype=np.float64)
        rewards = np.array(self.rewards, dtype=np.float64)
        if transitions.ndim != 3 or transitions.shape[0] != transitions.shape[2]:
            raise ValueError(
                f"transitions must have shape (S, A, S), got {transitions.shape}"
            )
        if transitions.shape[0] < 1 or transitions.shape[1] < 1:
            raise ValueError("MDP needs at least one state and one action")
        if rewards.shape != transitions.shape:
            raise ValueError(
                f"rewards shape {rewards.shape} does not match "
                f"transitions shape {transitions.shape}"
            )
        transitions.setflags(write=False)
        rewards.setflags(write=False)
        object.__setattr__(self, "transitions", transitions)
        object.__setattr__(self, "rewards", rewards)
        object.__setattr__(self, "gamma", float(self.gamma))

    @property
    def num_states(self) -> int:
        return self.transitions.shape[0]

    @property
    def num_actions(self) -> int:
        return self.transitions.shape[1]


@dataclass(frozen=True)
class ValidationReport:
    """Outcome of :func:`validate_mdp`; truthy iff the MDP is valid."""

    ok: bool
    violations: tuple[str, ...]

    def __bool__(self) -> bool:
        return self.ok


def validate_mdp(mdp: MDP) -> ValidationReport:
    """Check the value-level MDP invariants and report every violation.

    Verified: each transition row sums to 1 (within ``PROB_ROW_ATOL``),
    all probabilities are nonnegative, 0 <= gamma < 1, and both tensors
    are finite. Violations name the offending (state, action) row.
    """
    violations: list[str] = []
    if not (0.0 <= mdp.gamma < 1.0):
        violations.append(f"gamma out of range: {mdp.gamma!r} (need 0 <= gamma < 1)")
    for i in range(mdp.num_states):
        for a in range(mdp.num_actions):
            row = mdp.transitions[i, a]
            if not np.isfinite(row).all():
                violations.append(f"non-finite transition probability in row ({i}, {a})")
                continue
            if (row < 0.0).any():
                violations.append(f"negative transition probability in row ({i}, {a})")
            total = float(row.sum())
            if abs(total - 1.0) > PROB_ROW_ATOL:
                violations.append(f"transition row ({i}, {a}) sums to {total:.12g}")
            if not np.isfinite(mdp.rewards[i, a]).all():
                violations.append(f"non-finite reward in row ({i}, {a})")
    return ValidationReport(ok=not violations, violations=tuple(violations))


def check_mdp(mdp: MDP) -> MDP:
    """Raise ``ValueError`` listing all invariant violations; return the MDP."""
    report = validate_mdp(mdp)
    if not report.ok:
        raise ValueError("invalid MDP:\n" + "\n".join(report.violations))
    return mdp


def check_q_table(mdp: MDP, q: np.ndarray) -> np.ndarray:
    """Validate a Q-table against an MDP: shape (S, A), all entries finite."""
    q = np.asarray(q, dtype=np.float64)
    expected = (mdp.num_states, mdp.num_actions)
    if q.shape != expected:
        raise ValueError(f"Q-table shape {q.shape} does not match MDP shape {expected}")
    if not np.isfinite(q).all():
        raise ValueError("Q-table contains non-finite entries")
    return q


def check_value_fn(mdp: MDP, values: np.ndarray) -> np.ndarray:
    """Validate a state-value vector: length S, all entries finite."""
    values = np.asarray(values, dtype=np.float64)
    if values.shape != (mdp.num_states,):
        raise ValueError(
            f"value function shape {values.shape} does not match ({mdp.num_states},)"
        )
    if not np.isfinite(values).all():
        raise ValueError("value function contains non-finite entries")
    return values


def check_policy(mdp: MDP, policy: np.ndarray) -> np.ndarray:
    """Validate a deterministic policy: length S, entries in [0, A)."""
    policy = np.asarray(policy)
    if policy.shape != (mdp.num_states,):
        raise ValueError(
            f"policy shape {policy.shape} does not match ({mdp.num_states},)"
        )
    if not np.issubdtype(policy.dtype, np.integer):
        raise ValueError("policy entries must be integers")
    if ((policy < 0) | (policy >= mdp.num_actions)).any():
        raise ValueError(f"policy entries must lie in [0, {mdp.num_actions})")
    return policy.astype(np.int64)


def expected_reward(mdp: MDP) -> np.ndarray:
    """Per (state, action) expected one-step reward: sum_j p(j|i,a) * r(i,a,j)."""
    return np.einsum("iaj,iaj->ia", mdp.transitions, mdp.rewards)


def value_from_q(q: np.ndarray) -> np.ndarray:
    """State values induced by a Q-table: the per-state max over actions."""
    q = np.asarray(q)
    if q.ndim != 2 or q.shape[1] < 1:
        raise ValueError(f"expected a (S, A) Q-table, got shape {q.shape}")
    return q.max(axis=1)


def greedy_policy(q: np.ndarray) -> np.ndarray:
    """Per-state argmax action; ties break toward the lowest action index."""
    q = np.asarray(q)
    if q.ndim != 2 or q.shape[1] < 1:
        raise ValueError(f"expected a (S, A) Q-table, got shape {q.shape}")
    return q.argmax(axis=1).astype(np.int64)


def q_from_values(mdp: MDP, values: np.ndarray) -> np.ndarray:
    """One-step lookahead Q-table for given state values:
    Q(i,a) = r(i,a) + gamma * sum_j p(j|i,a) * values[j]."""
    values = check_value_fn(mdp, values)
    return expected_reward(mdp) + mdp.gamma * (mdp.transitions @ values)
