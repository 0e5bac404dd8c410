"""
UCB values handed to the block optimizer.
"""
import numpy as np

from core.exceptions import DimensionError
from core.rewards import Regime


class UcbSnapshot:
    """U(i, j) per arm and cell; `inf` marks a cell that was never observed.

    `positive[i, j - 1]` holds cell j and, in the general regime,
    `negative[i, j - 1]` holds cell -j.
    """

    def __init__(self, positive, negative=None):
        self.positive = np.array(positive, dtype=float, ndmin=2)
        self.negative = None if negative is None else np.array(negative, dtype=float, ndmin=2)
        if self.negative is not None and self.negative.shape != self.positive.shape:
            raise DimensionError(
                    f"Negative cells {self.negative.shape} do not match "
                    f"positive cells {self.positive.shape}."
            )

    @classmethod
    def from_table(cls, table, n_states, regime=None):
        """Snapshot holding the true means of `table`.

        In the constant-negative regime cell j is a delay: cell 1 reads
        state -1, cell j >= 2 reads state j - 1.
        """
        regime = table.regime if regime is None else Regime(regime)
        arms = range(table.n_arms)
        cells = range(1, n_states + 1)
        if regime == Regime.GENERAL:
            return cls(
                    [[table.mean(arm, j) for j in cells] for arm in arms],
                    [[table.mean(arm, -j) for j in cells] for arm in arms],
            )
        return cls([[table.mean(arm, -1 if j == 1 else j - 1) for j in cells] for arm in arms])

    @property
    def n_arms(self):
        return self.positive.shape[0]

    @property
    def n_states(self):
        return self.positive.shape[1]

    @property
    def regime(self):
        if self.negative is None:
            return Regime.CONSTANT_NEGATIVE
        return Regime.GENERAL

    def value(self, arm, cell):
        if cell > 0:
            return float(self.positive[arm, cell - 1])
        if self.negative is None:
            raise DimensionError(f"Cell {cell} needs a general-regime snapshot.")
        return float(self.negative[arm, -cell - 1])

    def sentinel(self, block_length):
        """Finite stand-in for `inf`: larger than any block of observed cells can earn."""
        values = [self.positive] if self.negative is None else [self.positive, self.negative]
        finite = np.concatenate([v[np.isfinite(v)] for v in values])
        top = max(float(finite.max()), 0.0) if finite.size else 0.0
        return block_length * (1.0 + top) + 1.0

    def resolved(self, block_length):
        """Copy with every `inf` replaced by the sentinel."""
        sentinel = self.sentinel(block_length)

        def fill(values):
            return np.where(np.isfinite(values), values, sentinel)

        return UcbSnapshot(
                fill(self.positive),
                None if self.negative is None else fill(self.negative),
        )

    def __repr__(self):
        return f"UcbSnapshot(arms={self.n_arms}, states={self.n_states}, regime={self.regime.value})"
