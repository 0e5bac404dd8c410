"""
Test reward tables.
"""
from django.test import SimpleTestCase

from core.exceptions import InvalidStateError, RewardTableError
from core.rewards import Regime, RewardTable, expected_reward


def create_table(**kw):
    default_values = {
        'negative': [[0.2, 0.1, 0.0], [0.5, 0.5, 0.5]],
        'positive': [[0.3, 0.6, 0.9], [0.4, 0.4, 0.8]],
    }
    default_values.update(kw)

    return RewardTable(**default_values)


class RewardTableTests(SimpleTestCase):
    """Test reward tables."""

    def test_shape(self):
        """Test arms and half-width."""
        table = create_table()

        self.assertEqual(table.n_arms, 2)
        self.assertEqual(table.tau_max, 3)

    def test_lookup(self):
        """Test values are read on both sides."""
        table = create_table()

        self.assertEqual(expected_reward(table, 0, -1), 0.2)
        self.assertEqual(expected_reward(table, 0, -3), 0.0)
        self.assertEqual(expected_reward(table, 1, 2), 0.4)

    def test_saturation(self):
        """Test states beyond tau_max read the last value."""
        table = create_table()

        self.assertEqual(expected_reward(table, 0, table.tau_max + 7), 0.9)
        self.assertEqual(expected_reward(table, 0, -table.tau_max - 7), 0.0)

    def test_zero_state_rejected(self):
        """Test state 0 raises."""
        with self.assertRaises(InvalidStateError):
            expected_reward(create_table(), 0, 0)

    def test_arm_out_of_range(self):
        """Test arm indices outside 0..K-1 raise instead of wrapping."""
        table = create_table()

        for arm in (-1, 2):
            with self.assertRaises(IndexError):
                expected_reward(table, arm, 1)

    def test_values_out_of_range(self):
        """Test values outside [0, 1] raise."""
        with self.assertRaises(RewardTableError):
            create_table(positive=[[0.3, 0.6, 1.2], [0.4, 0.4, 0.8]])

    def test_increasing_negative_side_rejected(self):
        """Test longer runs cannot pay more."""
        with self.assertRaises(RewardTableError):
            create_table(negative=[[0.1, 0.2, 0.3], [0.5, 0.5, 0.5]])

    def test_shape_mismatch(self):
        """Test both sides must have the same shape."""
        with self.assertRaises(RewardTableError):
            create_table(negative=[[0.1, 0.0], [0.5, 0.5]])

    def test_constant_negative_flag(self):
        """Test the regime follows the negative side."""
        self.assertFalse(create_table().constant_negative)
        self.assertEqual(create_table().regime, Regime.GENERAL)

        table = create_table(negative=[[0.2, 0.2, 0.2], [0.5, 0.5, 0.5]])
        self.assertTrue(table.constant_negative)
        self.assertEqual(table.regime, Regime.CONSTANT_NEGATIVE)

    def test_monotone_on_negative_states(self):
        """Test mu(-j) <= mu(-j') whenever j >= j'."""
        table = create_table()
        for arm in range(table.n_arms):
            for j in range(1, 6):
                for j_prime in range(1, j + 1):
                    self.assertLessEqual(expected_reward(table, arm, -j),
                                         expected_reward(table, arm, -j_prime))

    def test_from_functions(self):
        """Test tabulating callables."""
        table = RewardTable.from_functions(
                [lambda tau: float(tau >= 2), lambda tau: 0.0],
                tau_max=2,
        )

        self.assertEqual(table.positive.tolist(), [[0.0, 1.0], [0.0, 0.0]])
        self.assertEqual(table.negative.tolist(), [[0.0, 0.0], [0.0, 0.0]])

    def test_to_dict(self):
        """Test the instance document."""
        data = create_table().to_dict()

        self.assertEqual(data['K'], 2)
        self.assertEqual(data['tau_max'], 3)
        self.assertEqual(data['arms'][1]['values_pos'], [0.4, 0.4, 0.8])
        self.assertFalse(data['constant_negative'])

    def test_tables_are_immutable(self):
        """Test the value arrays cannot be written."""
        with self.assertRaises(ValueError):
            create_table().positive[0, 0] = 1.0
