"""
Reward tables of LSD bandits.
"""
import enum

import numpy as np

from core.exceptions import InvalidStateError, RewardTableError


class Regime(str, enum.Enum):
    """Shape of the reward functions on negative states."""
    CONSTANT_NEGATIVE = 'constant_negative'
    GENERAL = 'general'


class RewardTable:
    """Expected rewards mu_a(tau) of every arm on a finite window of states.

    `negative[a, j - 1]` holds mu_a(-j) and `positive[a, j - 1]` holds
    mu_a(j) for j = 1..tau_max; states beyond the window saturate.
    """

    def __init__(self, negative, positive):
        negative = np.array(negative, dtype=float, ndmin=2)
        positive = np.array(positive, dtype=float, ndmin=2)
        if negative.shape != positive.shape or negative.shape[1] < 1:
            raise RewardTableError(
                    f"Negative {negative.shape} and positive {positive.shape} "
                    "sides must share a nonempty (arms, tau_max) shape."
            )
        for side in (negative, positive):
            if np.any(side < 0.0) or np.any(side > 1.0) or not np.all(np.isfinite(side)):
                raise RewardTableError("Expected rewards must lie in [0, 1].")
        if np.any(np.diff(negative, axis=1) > 0.0):
            raise RewardTableError("Expected rewards must be nondecreasing on negative states.")

        negative.setflags(write=False)
        positive.setflags(write=False)
        self.negative = negative
        self.positive = positive

    @classmethod
    def from_functions(cls, functions, tau_max):
        """Tabulate one callable mu(tau) per arm on [-tau_max, tau_max]."""
        states = range(1, tau_max + 1)
        return cls(
                [[mu(-tau) for tau in states] for mu in functions],
                [[mu(tau) for tau in states] for mu in functions],
        )

    @property
    def n_arms(self):
        return self.negative.shape[0]

    @property
    def tau_max(self):
        return self.negative.shape[1]

    @property
    def constant_negative(self):
        return bool(np.all(self.negative == self.negative[:, :1]))

    @property
    def regime(self):
        if self.constant_negative:
            return Regime.CONSTANT_NEGATIVE
        return Regime.GENERAL

    def mean(self, arm, tau):
        """Expected reward of `arm` in state `tau`."""
        if not 0 <= arm < self.n_arms:
            raise IndexError(f"Arm {arm} out of range for {self.n_arms} arms.")
        if tau == 0:
            raise InvalidStateError("Last-switch state cannot be 0.")
        index = min(abs(tau), self.tau_max) - 1
        if tau < 0:
            return float(self.negative[arm, index])
        return float(self.positive[arm, index])

    def means(self, state):
        """Expected reward of every arm in `state`."""
        return np.array([self.mean(arm, tau) for arm, tau in enumerate(state)])

    def to_dict(self):
        return {
            'K': self.n_arms,
            'tau_max': self.tau_max,
            'arms': [
                {
                    'values_neg': self.negative[arm].tolist(),
                    'values_pos': self.positive[arm].tolist(),
                }
                for arm in range(self.n_arms)
            ],
            'constant_negative': self.constant_negative,
        }

    def __eq__(self, other):
        if not isinstance(other, RewardTable):
            return NotImplemented
        return (np.array_equal(self.negative, other.negative)
                and np.array_equal(self.positive, other.positive))

    def __hash__(self):
        return hash((self.negative.tobytes(), self.positive.tobytes()))

    def __repr__(self):
        return f"RewardTable(n_arms={self.n_arms}, tau_max={self.tau_max})"


def expected_reward(table, arm, tau):
    """mu_arm(tau) with saturation beyond the table window."""
    return table.mean(arm, tau)
