"""JSON serialization for MDPs and Q-tables.

MDP files are objects with ``num_states``, ``num_actions``, ``gamma``,
``transitions`` (nested [i][a][j] array) and ``rewards`` (same layout).
Q-table files carry ``num_states``, ``num_actions``, ``values``. Floats are
written with Python's shortest round-trip repr, so a save/load cycle is
value-exact for finite doubles.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .mdp import MDP, check_mdp


def mdp_to_dict(mdp: MDP) -> dict:
    return {
        "num_states": mdp.num_states,
        "num_actions": mdp.num_actions,
        "gamma": mdp.gamma,
        "transitions": mdp.transitions.tolist(),
        "rewards": mdp.rewards.tolist(),
    }


def mdp_from_dict(data: dict) -> MDP:
    try:
        num_states = int(data["num_states"])
        num_actions = int(data["num_actions"])
        gamma = float(data["gamma"])
        transitions = np.asarray(data["transitions"], dtype=np.float64)
        rewards = np.asarray(data["rewards"], dtype=np.float64)
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"malformed MDP document: {exc}") from exc
    expected = (num_states, num_actions, num_states)
    if transitions.shape != expected:
        raise ValueError(
            f"transitions shape {transitions.shape} does not match the declared "
            f"dimensions {expected}"
        )
    if rewards.shape != expected:
        raise ValueError(
            f"rewards shape {rewards.shape} does not match the declared "
            f"dimensions {expected}"
        )
    return check_mdp(MDP(transitions=transitions, rewards=rewards, gamma=gamma))


def save_mdp(mdp: MDP, path: str | Path) -> None:
    Path(path).write_text(json.dumps(mdp_to_dict(mdp)) + "\n")


def load_mdp(path: str | Path) -> MDP:
    try:
        data = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise ValueError(f"{path}: not valid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise ValueError(f"{path}: expected a JSON object at the top level")
    return mdp_from_dict(data)


def save_q_table(q: np.ndarray, path: str | Path) -> None:
    q = np.asarray(q, dtype=np.float64)
    if q.ndim != 2:
        raise ValueError(f"expected a (S, A) Q-table, got shape {q.shape}")
    doc = {
        "num_states": q.shape[0],
        "num_actions": q.shape[1],
        "values": q.tolist(),
    }
    Path(path).write_text(json.dumps(doc) + "\n")


def load_q_table(path: str | Path) -> np.ndarray:
    try:
        data = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise ValueError(f"{path}: not valid JSON: {exc}") from exc
    try:
        values = np.asarray(data["values"], dtype=np.float64)
        declared = (int(data["num_states"]), int(data["num_actions"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"{path}: malformed Q-table document: {exc}") from exc
    if values.ndim != 2 or values.shape != declared:
        raise ValueError(
            f"{path}: values shape {values.shape} does not match the declared "
            f"dimensions {declared}"
        )
    if not np.isfinite(values).all():
        raise ValueError(f"{path}: Q-table contains non-finite entries")
    return values
