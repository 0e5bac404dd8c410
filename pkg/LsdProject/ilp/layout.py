"""
Flat indexing of the block ILP variables.

F[i, t] is 1 when arm i is pulled for the first time at step t. In the
positive-only encoding Y[i, j, t] is 1 when arm i is pulled at step t,
j steps after its previous pull. In the general encoding Y+[i, j, t] and
Y-[i, j, t] are 1 when arm i is pulled at step t from state +j or -j.
Steps run over 0..d-1 and cells over 1..d.
"""
from dataclasses import dataclass

from core.rewards import Regime


@dataclass(frozen=True)
class VariableLayout:
    n_arms: int
    block_length: int
    regime: Regime = Regime.CONSTANT_NEGATIVE

    def __post_init__(self):
        object.__setattr__(self, 'regime', Regime(self.regime))
        if self.n_arms < 1 or self.block_length < 1:
            raise ValueError(f"Invalid layout: {self.n_arms} arms, blocks of {self.block_length}.")

    @property
    def general(self):
        return self.regime == Regime.GENERAL

    @property
    def cells(self):
        """Valid cell indices, negative ones only in the general encoding."""
        positive = tuple(range(1, self.block_length + 1))
        if self.general:
            return tuple(-j for j in reversed(positive)) + positive
        return positive

    @property
    def n_first_pulls(self):
        return self.n_arms * self.block_length

    @property
    def n_per_sign(self):
        return self.n_arms * self.block_length * self.block_length

    @property
    def size(self):
        return self.n_first_pulls + (2 if self.general else 1) * self.n_per_sign

    def f(self, arm, t):
        return arm * self.block_length + t

    def y(self, arm, cell, t):
        """Index of the non-first-pull variable of `arm` at step `t` in `cell`."""
        d = self.block_length
        if not 1 <= abs(cell) <= d or (cell < 0 and not self.general):
            raise ValueError(f"Cell {cell} is not part of {self}.")
        base = self.n_first_pulls + (self.n_per_sign if cell < 0 else 0)
        return base + (arm * d + abs(cell) - 1) * d + t

    def pulls(self, arm, t):
        """Every variable meaning `arm` is pulled at step `t`."""
        return [self.f(arm, t)] + [self.y(arm, cell, t) for cell in self.cells]

    def variables_at(self, t):
        return [var for arm in range(self.n_arms) for var in self.pulls(arm, t)]

    def describe(self, var):
        """(kind, arm, cell, t) of a flat index; kind is 'F' or 'Y', cell is None for F."""
        d = self.block_length
        if not 0 <= var < self.size:
            raise IndexError(f"Variable {var} out of range for {self.size} variables.")
        if var < self.n_first_pulls:
            arm, t = divmod(var, d)
            return 'F', arm, None, t
        offset = var - self.n_first_pulls
        sign = 1
        if offset >= self.n_per_sign:
            offset -= self.n_per_sign
            sign = -1
        arm, rest = divmod(offset, d * d)
        j, t = divmod(rest, d)
        return 'Y', arm, sign * (j + 1), t

    def label(self, var):
        kind, arm, cell, t = self.describe(var)
        if kind == 'F':
            return f"F[{arm},{t}]"
        if not self.general:
            return f"Y[{arm},{cell},{t}]"
        return f"Y{'+' if cell > 0 else '-'}[{arm},{abs(cell)},{t}]"
