"""Seedable random MDP and initial-Q generation for benchmarks.

Transition rows are sampled as normalized uniforms on (0, 1], so every row
is dense and sums to 1 exactly at generation. Rewards default to uniform
on [-1, 1]. Everything is driven by numpy's PCG64 generator, so outputs
are bit-reproducible given the seed; the generator name is exported so
benchmark artifacts can record it.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .mdp import MDP

RNG_NAME = "numpy.random.PCG64"

MAX_SEED = 2**64 - 1


@dataclass(frozen=True)
class GeneratorConfig:
    num_states: int = 10
    num_actions: int = 5
    gamma: float = 0.9
    seed: int = 0
    reward_low: float = -1.0
    reward_high: float = 1.0

    def __post_init__(self) -> None:
        if int(self.num_states) < 1 or int(self.num_actions) < 1:
            raise ValueError("num_states and num_actions must be positive")
        if not (0.0 <= self.gamma < 1.0):
            raise ValueError(f"gamma must lie in [0, 1), got {self.gamma}")
        if not (0 <= int(self.seed) <= MAX_SEED):
            raise ValueError("seed must fit in an unsigned 64-bit integer")
        if not (self.reward_low < self.reward_high):
            raise ValueError("reward_low must be strictly below reward_high")


def random_mdp(cfg: GeneratorConfig) -> MDP:
    """Sample a dense random MDP, fully determined by ``cfg.seed``."""
    rng = np.random.default_rng(cfg.seed)
    shape = (cfg.num_states, cfg.num_actions, cfg.num_states)
    # 1 - U[0,1) lies in (0, 1]: no all-zero rows, so normalization is safe.
    raw = 1.0 - rng.random(shape)
    transitions = raw / raw.sum(axis=2, keepdims=True)
    rewards = rng.uniform(cfg.reward_low, cfg.reward_high, size=shape)
    return MDP(transitions=transitions, rewards=rewards, gamma=cfg.gamma)


def random_q0(
    num_states: int,
    num_actions: int,
    seed: int,
    low: int = 10,
    high: int = 20,
) -> np.ndarray:
    """Q-table of independent uniform integers in [low, high], as floats."""
    if num_states < 1 or num_actions < 1:
        raise ValueError("num_states and num_actions must be positive")
    rng = np.random.default_rng(seed)
    return rng.integers(low, high, size=(num_states, num_actions), endpoint=True).astype(
        np.float64
    )
