"""
Test the regret envelope.
"""
import math

from django.test import SimpleTestCase

from algos.bounds import regret_envelope
from core.exceptions import ConfigError, HorizonError
from core.rewards import Regime


class RegretEnvelopeTests(SimpleTestCase):
    """Test regret_envelope."""

    def test_value(self):
        """Test K = 5, d = 4, T = 400."""
        self.assertAlmostEqual(regret_envelope(5, 4, 400), 19915.2, delta=0.05)

    def test_single_block(self):
        """Test d = T leaves K plus the constant term."""
        tail = (math.pi ** 2 / 3 + 1) * 3 * 8 ** 3

        self.assertAlmostEqual(regret_envelope(3, 8, 8) - tail, 3.0)

    def test_general_regime_is_looser(self):
        """Test the general-regime bound exceeds the constant-negative one."""
        self.assertGreater(regret_envelope(3, 4, 4000, regime=Regime.GENERAL),
                           regret_envelope(3, 4, 4000))

    def test_grows_with_horizon(self):
        """Test the bound is increasing in T."""
        self.assertLess(regret_envelope(3, 4, 4000), regret_envelope(3, 4, 8000))

    def test_non_dividing_block(self):
        """Test the block length must divide the horizon."""
        with self.assertRaises(HorizonError):
            regret_envelope(3, 3, 100)

    def test_alpha(self):
        """Test the bound is only stated for alpha = 1.5."""
        with self.assertRaises(ConfigError):
            regret_envelope(3, 4, 400, alpha=2.0)
