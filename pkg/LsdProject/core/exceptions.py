"""
Errors raised by the toolkit.
"""


class LsdError(Exception):
    """Base class of every toolkit error."""


class InvalidStateError(LsdError, ValueError):
    """A last-switch state equal to 0."""


class RewardTableError(LsdError, ValueError):
    """Reward values out of [0, 1], or increasing towards -inf."""


class BlockError(LsdError, ValueError):
    """Invalid block: arm out of range, or first two actions equal in the general regime."""


class EnumerationLimitError(LsdError):
    """A brute-force oracle was asked for more candidates than the configured cap."""


class HorizonError(LsdError, ValueError):
    """A horizon not divisible by the block length."""


class DimensionError(LsdError, ValueError):
    """UCB snapshot and variable layout do not agree."""


class InfeasiblePointError(LsdError):
    """A point violating the ILP constraints, with the first violated row."""

    def __init__(self, message, tag=None):
        super().__init__(message)
        self.tag = tag


class LpError(LsdError):
    """The simplex could not finish (iteration limit, malformed problem)."""


class NoFeasibleContinuationError(LsdError):
    """Every candidate arm at some depth of the block search was infeasible."""


class InstanceError(LsdError):
    """Instance file missing or invalid."""


class ConfigError(LsdError):
    """Experiment configuration invalid."""
