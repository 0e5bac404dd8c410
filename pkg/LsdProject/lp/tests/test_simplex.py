"""
Test the simplex solver.
"""
import itertools

import numpy as np
from django.test import SimpleTestCase

from core.exceptions import LpError
from harness.instances import random_instance, seasonal_instance
from ilp.encoding import encode, feasible_point
from ilp.snapshot import UcbSnapshot
from lp.simplex import LpProblem, LpStatus, solve, solve_with_fixings


def assert_feasible(test, problem, x, tolerance=1e-9):
    test.assertTrue(np.all(problem.G @ x - problem.h <= tolerance))
    test.assertTrue(np.all(np.abs(problem.A @ x - problem.b) <= tolerance))
    test.assertTrue(np.all(x >= -tolerance))


class SolveTests(SimpleTestCase):
    """Test solve."""

    def test_single_inequality(self):
        """Test maximize x1 s.t. x1 + x2 <= 1."""
        solution = solve(LpProblem([1.0, 0.0], G=[[1.0, 1.0]], h=[1.0]))

        self.assertEqual(solution.status, LpStatus.OPTIMAL)
        self.assertAlmostEqual(solution.objective, 1.0)
        np.testing.assert_allclose(solution.x, [1.0, 0.0])

    def test_equality(self):
        """Test an equality row needs phase 1."""
        problem = LpProblem([1.0, 2.0], A=[[1.0, 1.0]], b=[1.5])

        solution = solve(problem)

        self.assertAlmostEqual(solution.objective, 2.5)
        assert_feasible(self, problem, solution.x)

    def test_infeasible(self):
        """Test x1 >= 2 within the box."""
        solution = solve(LpProblem([1.0], G=[[-1.0]], h=[-2.0]))

        self.assertEqual(solution.status, LpStatus.INFEASIBLE)
        self.assertIsNone(solution.x)

    def test_unbounded(self):
        """Test an unbounded direction without the box."""
        solution = solve(LpProblem([1.0, 0.0], G=[[0.0, 1.0]], h=[1.0], box=False))

        self.assertEqual(solution.status, LpStatus.UNBOUNDED)

    def test_dimension_mismatch(self):
        """Test malformed systems raise."""
        with self.assertRaises(LpError):
            LpProblem([1.0, 0.0], G=[[1.0]], h=[1.0])

    def test_iteration_limit(self):
        """Test the solver stops at the iteration limit."""
        with self.assertRaises(LpError):
            solve(LpProblem([1.0, 1.0], G=[[1.0, 2.0]], h=[2.0]), max_iterations=0)

    def test_relaxation_bounds_every_block(self):
        """Test the LP optimum is at least the value of every block."""
        rng = np.random.default_rng(6)
        table = random_instance(2, 3, rng)
        instance = encode(UcbSnapshot.from_table(table, 3), 4)
        problem = instance.relaxation()

        solution = solve(problem)

        self.assertEqual(solution.status, LpStatus.OPTIMAL)
        assert_feasible(self, problem, solution.x)
        for block in itertools.product(range(2), repeat=4):
            z = feasible_point(block, instance.layout)
            self.assertGreaterEqual(solution.objective + 1e-9, instance.objective_value(z))

    def test_deterministic(self):
        """Test identical problems give identical solutions and pivot counts."""
        instance = encode(UcbSnapshot.from_table(seasonal_instance(), 3), 4)

        first = solve(instance.relaxation())
        second = solve(instance.relaxation())

        self.assertEqual(first.iterations, second.iterations)
        np.testing.assert_array_equal(first.x, second.x)


class FixingTests(SimpleTestCase):
    """Test solve_with_fixings."""

    def setUp(self):
        self.instance = encode(UcbSnapshot.from_table(seasonal_instance(), 3), 4)
        self.layout = self.instance.layout
        self.problem = self.instance.relaxation()

    def test_spike_start_bounds_best_block(self):
        """Test fixing arm 0 first keeps the relaxation above 1.10."""
        solution = solve_with_fixings(self.problem, [(self.layout.f(0, 0), 1)])

        self.assertEqual(solution.status, LpStatus.OPTIMAL)
        self.assertGreaterEqual(solution.objective, 1.10 - 1e-9)
        self.assertEqual(solution.x[self.layout.f(0, 0)], 1.0)

    def test_full_block(self):
        """Test fixing a whole encoding returns its value."""
        z = feasible_point([0, 2, 2, 0], self.layout)

        solution = solve_with_fixings(self.problem, [(var, int(z[var])) for var in range(z.size)])

        self.assertAlmostEqual(solution.objective, 1.10)
        np.testing.assert_array_equal(solution.x, z)

    def test_two_first_pulls_at_one_step(self):
        """Test contradicting fixings are infeasible."""
        fixings = [(self.layout.f(0, 0), 1), (self.layout.f(1, 0), 1)]

        solution = solve_with_fixings(self.problem, fixings)

        self.assertEqual(solution.status, LpStatus.INFEASIBLE)

    def test_empty_fixings(self):
        """Test no fixings is a plain solve."""
        self.assertAlmostEqual(solve_with_fixings(self.problem, []).objective,
                               solve(self.problem).objective)

    def test_conflicting_values(self):
        """Test the same variable fixed to 0 and 1."""
        var = self.layout.f(0, 0)

        self.assertEqual(solve_with_fixings(self.problem, [(var, 0), (var, 1)]).status,
                         LpStatus.INFEASIBLE)
