"""
Per-step records of a learner's run.
"""
from dataclasses import dataclass, field

import numpy as np
import pandas as pd

TRACE_COLUMNS = ['rep', 't', 'algo', 'arm', 'tau', 'reward', 'cum_reward']


@dataclass(frozen=True)
class Step:
    arm: int
    tau: int
    reward: float
    expected: float


@dataclass
class RoundTrace:
    """What one round played and which cells it updated."""
    block: tuple
    estimate: float = None
    steps: list = field(default_factory=list)
    updates: list = field(default_factory=list)

    @property
    def total(self):
        return sum(step.reward for step in self.steps)


class RunTrace:
    """Steps and rounds of a full run."""

    def __init__(self):
        self.rounds = []
        self.arms = []
        self.taus = []
        self.rewards = []
        self.expected = []

    def extend(self, round_trace):
        self.rounds.append(round_trace)
        for step in round_trace.steps:
            self.arms.append(step.arm)
            self.taus.append(step.tau)
            self.rewards.append(step.reward)
            self.expected.append(step.expected)

    def __len__(self):
        return len(self.rewards)

    @property
    def cumulative(self):
        return np.cumsum(self.rewards)

    @property
    def cumulative_expected(self):
        return np.cumsum(self.expected)

    def to_frame(self, rep, algo):
        return pd.DataFrame({
            'rep': rep,
            't': np.arange(len(self), dtype=int),
            'algo': algo,
            'arm': np.array(self.arms, dtype=int),
            'tau': np.array(self.taus, dtype=int),
            'reward': np.array(self.rewards, dtype=float),
            'cum_reward': self.cumulative,
        }, columns=TRACE_COLUMNS)
