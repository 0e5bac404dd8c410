"""
Test the greedy block search.
"""
from unittest.mock import patch

import numpy as np
from django.test import SimpleTestCase

from blocks.oracles import brute_force_best_block
from blocks.values import calibrated_reward
from bnb.solver import (
    exhaustive_block,
    format_trace,
    prefix_fixings,
    relaxed_score,
    solve_block,
)
from core.exceptions import DimensionError, EnumerationLimitError, NoFeasibleContinuationError
from core.rewards import Regime
from harness.instances import random_instance, seasonal_instance
from ilp.layout import VariableLayout
from ilp.snapshot import UcbSnapshot
from lp.simplex import solve_with_fixings


class SolveBlockTests(SimpleTestCase):
    """Test solve_block."""

    def test_spike_block(self):
        """Test the search finds the best block of length 4 under the true means."""
        snapshot = UcbSnapshot.from_table(seasonal_instance(), 3)

        with patch('bnb.solver.solve_with_fixings', wraps=solve_with_fixings) as patched:
            choice = solve_block(snapshot, 4)

        self.assertEqual(choice.block, (0, 2, 2, 0))
        self.assertAlmostEqual(choice.value, 1.10)
        self.assertAlmostEqual(choice.value, brute_force_best_block(seasonal_instance(), 4).value)
        self.assertEqual(patched.call_count, 4 * 5)
        self.assertEqual(choice.lp_solves, 4 * 5)

    def test_single_step(self):
        """Test d = 1 returns arm 0 by tie-break."""
        choice = solve_block(UcbSnapshot(np.zeros((3, 0))), 1)

        self.assertEqual(choice.block, (0,))
        self.assertEqual(choice.value, 0.0)

    def test_general_regime_skips_repeated_start(self):
        """Test the second step never repeats the first in the general regime."""
        table = random_instance(3, 3, np.random.default_rng(12), constant_negative=False)
        snapshot = UcbSnapshot.from_table(table, 3)

        choice = solve_block(snapshot, 4)

        self.assertNotEqual(choice.block[0], choice.block[1])
        self.assertEqual(choice.lp_solves, 4 * 3 - 1)
        self.assertAlmostEqual(choice.value, calibrated_reward(choice.block, table).total)

    def test_random_instances(self):
        """Test returned blocks are valid and priced exactly."""
        rng = np.random.default_rng(13)
        for _ in range(10):
            table = random_instance(3, 3, rng)

            choice = solve_block(UcbSnapshot.from_table(table, 3), 4)

            self.assertEqual(len(choice.block), 4)
            self.assertAlmostEqual(choice.value, calibrated_reward(choice.block, table).total)
            self.assertLessEqual(choice.value, brute_force_best_block(table, 4).value + 1e-9)

    def test_committed_scores_do_not_increase(self):
        """Test relaxed scores along the committed path are non-increasing."""
        table = random_instance(3, 3, np.random.default_rng(14))

        choice = solve_block(UcbSnapshot.from_table(table, 3), 4)

        committed = [score for depth, arm, score in choice.trace if arm == choice.block[depth]]
        self.assertEqual(len(committed), 4)
        for earlier, later in zip(committed, committed[1:]):
            self.assertLessEqual(later, earlier + 1e-9)

    def test_no_feasible_continuation(self):
        """Test the search fails when every candidate is infeasible."""
        snapshot = UcbSnapshot.from_table(seasonal_instance(), 3)

        with patch('bnb.solver.solve_with_fixings') as patched:
            patched.return_value.optimal = False
            with self.assertRaises(NoFeasibleContinuationError):
                solve_block(snapshot, 4)


class RelaxedScoreTests(SimpleTestCase):
    """Test relaxed_score."""

    def setUp(self):
        self.snapshot = UcbSnapshot.from_table(seasonal_instance(), 3)

    def test_empty_prefix_bounds_optimum(self):
        """Test the root relaxation is an upper bound."""
        self.assertGreaterEqual(relaxed_score([], self.snapshot, 4), 1.10 - 1e-9)

    def test_full_prefix_is_exact(self):
        """Test a complete block scores its calibrated value."""
        self.assertAlmostEqual(relaxed_score([0, 2, 2, 0], self.snapshot, 4), 1.10)

    def test_prefix_fixings(self):
        """Test one variable per fixed step is set to 1."""
        layout = VariableLayout(2, 3)

        fixings = prefix_fixings([1, 1], layout)

        ones = [var for var, value in fixings if value == 1]
        self.assertEqual(ones, [layout.f(1, 0), layout.y(1, 1, 1)])
        self.assertEqual(len(fixings), 2 * len(layout.variables_at(0)))
        self.assertEqual(prefix_fixings([], layout), [])

    def test_general_prefix_uses_signed_cells(self):
        """Test a consecutive pull maps to Y-[i, 1, t] in the general encoding."""
        layout = VariableLayout(2, 4, Regime.GENERAL)

        ones = [var for var, value in prefix_fixings([0, 1, 1], layout) if value == 1]

        self.assertEqual(ones, [layout.f(0, 0), layout.f(1, 1), layout.y(1, -1, 2)])


class TraceTests(SimpleTestCase):
    """Test trace formatting."""

    def test_format_trace(self):
        """Test one line per candidate."""
        self.assertEqual(format_trace([(0, 1, 0.5), (1, 0, 0.25)]),
                         "depth=0 arm=1 score=0.500000\ndepth=1 arm=0 score=0.250000")


class ExhaustiveBlockTests(SimpleTestCase):
    """Test exhaustive_block."""

    def test_spike_block(self):
        """Test enumeration finds the best block of length 4 without LP solves."""
        choice = exhaustive_block(UcbSnapshot.from_table(seasonal_instance(), 3), 4)

        self.assertEqual(choice.block, (0, 2, 2, 0))
        self.assertAlmostEqual(choice.value, 1.10)
        self.assertEqual(choice.lp_solves, 0)

    def test_matches_oracle(self):
        """Test the value equals the brute-force calibrated optimum in both regimes."""
        rng = np.random.default_rng(15)
        for constant_negative in (True, False):
            for _ in range(5):
                table = random_instance(3, 3, rng, constant_negative=constant_negative)

                choice = exhaustive_block(UcbSnapshot.from_table(table, 3, table.regime), 4)

                self.assertAlmostEqual(choice.value, brute_force_best_block(table, 4).value)
                self.assertAlmostEqual(choice.value, calibrated_reward(choice.block, table).total)

    def test_first_pull_prices(self):
        """Test priced first pulls are added to the block value."""
        snapshot = UcbSnapshot(np.zeros((2, 1)))
        first_pull = np.array([[0.0, 0.0], [0.0, 0.7]])

        choice = exhaustive_block(snapshot, 2, first_pull=first_pull)

        self.assertEqual(choice.block, (0, 1))
        self.assertAlmostEqual(choice.value, 0.7)

    def test_agrees_with_search_on_priced_objective(self):
        """Test both searches price blocks identically."""
        table = random_instance(3, 3, np.random.default_rng(16))
        snapshot = UcbSnapshot.from_table(table, 3)
        first_pull = np.random.default_rng(17).random((3, 4))

        greedy = solve_block(snapshot, 4, first_pull=first_pull)
        exact = exhaustive_block(snapshot, 4, first_pull=first_pull)

        self.assertGreaterEqual(exact.value + 1e-9, greedy.value)

    def test_cap(self):
        """Test the enumeration cap applies."""
        with self.assertRaises(EnumerationLimitError):
            exhaustive_block(UcbSnapshot.from_table(seasonal_instance(), 3), 4, cap=100)

    def test_first_pull_shape(self):
        """Test mis-shaped first-pull prices raise."""
        with self.assertRaises(DimensionError):
            exhaustive_block(UcbSnapshot(np.zeros((2, 1))), 2, first_pull=np.zeros((2, 3)))
