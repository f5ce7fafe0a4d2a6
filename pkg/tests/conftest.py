import numpy as np

from sovi import MDP, GeneratorConfig, random_mdp


def self_loop_mdp(num_actions=1, reward=1.0, gamma=0.9):
    """One state; every action loops back and pays the given reward."""
    transitions = np.ones((1, num_actions, 1))
    rewards = np.full((1, num_actions, 1), float(reward))
    return MDP(transitions=transitions, rewards=rewards, gamma=gamma)


def two_state_cycle(reward_01=1.0, reward_10=0.0, gamma=0.9):
    """Deterministic single-action cycle 0 -> 1 -> 0."""
    transitions = np.zeros((2, 1, 2))
    transitions[0, 0, 1] = 1.0
    transitions[1, 0, 0] = 1.0
    rewards = np.zeros((2, 1, 2))
    rewards[0, 0, 1] = reward_01
    rewards[1, 0, 0] = reward_10
    return MDP(transitions=transitions, rewards=rewards, gamma=gamma)


def random_instance(seed, num_states=4, num_actions=3, gamma=0.9):
    return random_mdp(
        GeneratorConfig(
            num_states=num_states, num_actions=num_actions, gamma=gamma, seed=seed
        )
    )
