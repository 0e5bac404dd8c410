"""
UCB statistics per (arm, state cell).
"""
import numpy as np

from core.conf import lsd_setting
from core.exceptions import DimensionError
from core.rewards import Regime
from ilp.snapshot import UcbSnapshot


def cell_for_state(tau, n_states, regime=Regime.CONSTANT_NEGATIVE):
    """Cell of an environment state.

    Constant-negative regime: every negative state is cell 1 and state
    tau >= 1 is cell tau + 1, capped at `n_states`. General regime: the
    state itself, clamped to [-n_states, n_states].
    """
    if Regime(regime) == Regime.GENERAL:
        return max(-n_states, min(tau, n_states))
    if tau < 0:
        return 1
    return min(tau + 1, n_states)


def state_before_first_pull(tau, t):
    """State of an arm at step `t` of a block it was not pulled in before."""
    if tau > 0:
        return tau + t
    if t == 0:
        return tau
    return t


def first_pull_values(snapshot, state, block_length):
    """Price of pulling each arm for the first time at each step of a block.

    `snapshot` must not hold `inf`; resolve it first.
    """
    values = np.zeros((snapshot.n_arms, block_length))
    for arm, tau in enumerate(state):
        for t in range(block_length):
            cell = cell_for_state(state_before_first_pull(tau, t), snapshot.n_states, snapshot.regime)
            values[arm, t] = snapshot.value(arm, cell)
    return values


class UcbTable:
    """Pull counts, empirical means and upper confidence bounds.

    Bounds are refreshed once per round by `end_round`, with the round
    counter t starting at 1: U = mean + sqrt(alpha * log(t + 1) / count).
    Cells never observed hold `inf`.
    """

    def __init__(self, n_arms, n_states, regime=Regime.CONSTANT_NEGATIVE, alpha=None):
        self.regime = Regime(regime)
        self.n_states = n_states
        self.alpha = lsd_setting('ALPHA', alpha)
        width = 2 * n_states if self.regime == Regime.GENERAL else n_states
        self.counts = np.zeros((n_arms, width), dtype=int)
        self.sums = np.zeros((n_arms, width))
        self.ucb = np.full((n_arms, width), np.inf)
        self.t = 1

    @property
    def n_arms(self):
        return self.counts.shape[0]

    def column(self, cell):
        if not 1 <= abs(cell) <= self.n_states or (cell < 0 and self.regime != Regime.GENERAL):
            raise DimensionError(f"Cell {cell} is not part of this {self.regime.value} table.")
        if self.regime != Regime.GENERAL:
            return cell - 1
        return self.n_states + cell if cell < 0 else self.n_states + cell - 1

    @property
    def means(self):
        with np.errstate(invalid='ignore', divide='ignore'):
            return np.where(self.counts > 0, self.sums / np.maximum(self.counts, 1), np.nan)

    def count(self, arm, cell):
        return int(self.counts[arm, self.column(cell)])

    def mean(self, arm, cell):
        return float(self.means[arm, self.column(cell)])

    def bound(self, arm, cell):
        return float(self.ucb[arm, self.column(cell)])

    def update(self, arm, cell, reward):
        column = self.column(cell)
        self.counts[arm, column] += 1
        self.sums[arm, column] += reward

    def end_round(self):
        """Recompute every bound with the current round, then advance the round counter."""
        observed = self.counts > 0
        bonus = np.sqrt(self.alpha * np.log(self.t + 1) / np.maximum(self.counts, 1))
        self.ucb = np.where(observed, self.means + bonus, np.inf)
        self.t += 1

    def snapshot(self):
        if self.regime == Regime.GENERAL:
            return UcbSnapshot(self.ucb[:, self.n_states:], self.ucb[:, :self.n_states][:, ::-1])
        return UcbSnapshot(self.ucb)
