"""
Last-switch states and their transition.
"""
from core.exceptions import InvalidStateError


def transition(tau, played):
    """Return the next last-switch state of an arm.

    A positive state counts the rounds since the arm stopped being played,
    a negative one the rounds it has been played in a row.
    """
    if tau == 0:
        raise InvalidStateError("Last-switch state cannot be 0.")
    if played:
        return tau - 1 if tau < 0 else -1
    return 1 if tau < 0 else tau + 1


class StateVector(tuple):
    """Immutable vector of last-switch states, one per arm."""

    def __new__(cls, states):
        states = tuple(int(tau) for tau in states)
        if any(tau == 0 for tau in states):
            raise InvalidStateError(f"State vector {states} contains 0.")
        return super().__new__(cls, states)

    @classmethod
    def ones(cls, n_arms):
        """Initial state: every arm at 1."""
        return cls((1,) * n_arms)

    @property
    def n_arms(self):
        return len(self)

    @property
    def reachable(self):
        """At most one arm (the one just played) sits on a negative state."""
        return sum(tau < 0 for tau in self) <= 1

    def advance(self, arm):
        """State after playing `arm`."""
        if not 0 <= arm < len(self):
            raise IndexError(f"Arm {arm} out of range for {len(self)} arms.")
        return StateVector(
                transition(tau, index == arm) for index, tau in enumerate(self)
        )

    def saturate(self, tau_max):
        """Clip every state to [-tau_max, tau_max].

        Two vectors with the same saturation earn the same rewards forever
        under a table of half-width `tau_max`.
        """
        return StateVector(max(-tau_max, min(tau, tau_max)) for tau in self)

    def __repr__(self):
        return f"StateVector({tuple(self)})"
