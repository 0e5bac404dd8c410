"""
The LSD bandit environment.
"""
import logging

import numpy as np

from core.states import StateVector

logger = logging.getLogger(__name__)


class Environment:
    """Bernoulli LSD bandit driven by a seeded generator.

    With `noise=False` every pull returns its expected reward, which makes
    learner bookkeeping testable exactly.
    """

    def __init__(self, table, seed=0, noise=True):
        self.table = table
        self.seed = seed
        self.noise = noise
        self.rng = np.random.default_rng(seed)
        self.state = StateVector.ones(table.n_arms)
        self.t = 0

    @property
    def n_arms(self):
        return self.table.n_arms

    def expected(self, arm):
        """Expected reward of pulling `arm` now."""
        return self.table.mean(arm, self.state[arm])

    def step(self, arm):
        """Pull `arm`: draw its reward, advance every state and the clock."""
        if not 0 <= arm < self.n_arms:
            raise IndexError(f"Arm {arm} out of range for {self.n_arms} arms.")
        mean = self.expected(arm)
        if self.noise:
            reward = float(self.rng.random() < mean)
        else:
            reward = mean
        self.state = self.state.advance(arm)
        self.t += 1
        return reward, self.state

    def reset(self):
        self.rng = np.random.default_rng(self.seed)
        self.state = StateVector.ones(self.n_arms)
        self.t = 0
        logger.debug("Environment reset with seed %s.", self.seed)


def step(env, arm):
    """Play one arm in `env`; returns (reward, new state)."""
    return env.step(arm)
