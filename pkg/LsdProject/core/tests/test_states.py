"""
Test last-switch states.
"""
import itertools

from django.test import SimpleTestCase

from core.exceptions import InvalidStateError
from core.states import StateVector, transition


def literal_transition(tau, played):
    """The four cases of the transition, written out."""
    if played and tau <= 0:
        return tau - 1
    if played and tau >= 0:
        return -1
    if not played and tau <= 0:
        return 1
    return tau + 1


class TransitionTests(SimpleTestCase):
    """Test the state transition."""

    def test_transition_examples(self):
        """Test the four branches on hand-picked states."""
        self.assertEqual(transition(1, True), -1)
        self.assertEqual(transition(-2, True), -3)
        self.assertEqual(transition(3, False), 4)
        self.assertEqual(transition(-5, False), 1)

    def test_transition_matches_literal_cases(self):
        """Test exhaustive agreement on [-10, 10] without 0."""
        states = [tau for tau in range(-10, 11) if tau != 0]
        for tau, played in itertools.product(states, (True, False)):
            result = transition(tau, played)

            self.assertEqual(result, literal_transition(tau, played))
            self.assertNotEqual(result, 0)

    def test_transition_rejects_zero(self):
        """Test state 0 is invalid."""
        with self.assertRaises(InvalidStateError):
            transition(0, True)


class StateVectorTests(SimpleTestCase):
    """Test state vectors."""

    def test_ones(self):
        """Test the initial vector."""
        self.assertEqual(StateVector.ones(3), (1, 1, 1))

    def test_zero_rejected(self):
        """Test a vector with a 0 entry raises."""
        with self.assertRaises(InvalidStateError):
            StateVector((1, 0))

    def test_advance(self):
        """Test only the played arm goes negative."""
        state = StateVector.ones(3).advance(1).advance(1)

        self.assertEqual(state, (3, -2, 3))
        self.assertEqual(state.advance(0), (-1, 1, 4))

    def test_at_most_one_negative(self):
        """Test every play sequence keeps a single negative state, the last played arm."""
        for sequence in itertools.product(range(3), repeat=5):
            state = StateVector.ones(3)
            for arm in sequence:
                state = state.advance(arm)

                self.assertTrue(state.reachable)
                self.assertLess(state[arm], 0)

    def test_advance_out_of_range(self):
        """Test playing a missing arm raises."""
        with self.assertRaises(IndexError):
            StateVector.ones(2).advance(2)

    def test_saturate(self):
        """Test clipping to the table window."""
        self.assertEqual(StateVector((12, -7, 2)).saturate(4), (4, -4, 2))
