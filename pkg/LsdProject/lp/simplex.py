"""
Two-phase primal simplex on a dense tableau.

Problems are stated as: maximize c^T x subject to G x <= h, A x = b,
x >= 0, with x <= 1 added to G unless `box=False`. Pivots follow Bland's
rule, so a problem always produces the same pivot sequence.
"""
import enum
import logging
from dataclasses import dataclass

import numpy as np

from core.conf import lsd_setting
from core.exceptions import LpError

logger = logging.getLogger(__name__)


class LpStatus(str, enum.Enum):
    OPTIMAL = 'optimal'
    INFEASIBLE = 'infeasible'
    UNBOUNDED = 'unbounded'


@dataclass(frozen=True)
class LpSolution:
    status: LpStatus
    x: np.ndarray = None
    objective: float = None
    iterations: int = 0

    @property
    def optimal(self):
        return self.status == LpStatus.OPTIMAL


def _system(matrix, rhs, n, name):
    if matrix is None:
        return np.zeros((0, n)), np.zeros(0)
    matrix = np.array(matrix, dtype=float, ndmin=2)
    rhs = np.array(rhs, dtype=float, ndmin=1)
    if matrix.shape[1] != n or matrix.shape[0] != rhs.shape[0]:
        raise LpError(
                f"{name} system of shape {matrix.shape} with {rhs.shape[0]} right-hand "
                f"sides does not fit {n} variables."
        )
    return matrix, rhs


class LpProblem:
    """maximize c^T x s.t. G x <= h, A x = b, 0 <= x (<= 1 with `box`)."""

    def __init__(self, objective, G=None, h=None, A=None, b=None, box=True, offset=0.0):
        self.objective = np.array(objective, dtype=float, ndmin=1)
        n = self.objective.shape[0]
        self.G, self.h = _system(G, h, n, 'Inequality')
        self.A, self.b = _system(A, b, n, 'Equality')
        if box:
            self.G = np.vstack([self.G, np.eye(n)])
            self.h = np.concatenate([self.h, np.ones(n)])
        self.offset = float(offset)

    @property
    def n_variables(self):
        return self.objective.shape[0]

    def __repr__(self):
        return (f"LpProblem(variables={self.n_variables}, "
                f"inequalities={self.G.shape[0]}, equalities={self.A.shape[0]})")


def _pivot(T, row, col):
    T[row] /= T[row, col]
    pivot_row = T[row]
    column = T[:, col].copy()
    column[row] = 0.0
    T -= np.outer(column, pivot_row)


def _entering(z_row, tolerance):
    """Lowest-index column with a negative reduced cost."""
    candidates = np.flatnonzero(z_row[:-1] < -tolerance)
    return int(candidates[0]) if candidates.size else -1


def _leaving(T, col, basis, tolerance):
    """Minimum-ratio row; ties go to the lowest basic variable."""
    column = T[:-1, col]
    rows = np.flatnonzero(column > tolerance)
    if not rows.size:
        return -1
    ratios = T[rows, -1] / column[rows]
    tied = rows[ratios <= ratios.min() + tolerance]
    return int(min(tied, key=lambda row: basis[row]))


def _run(T, basis, tolerance, max_iterations, iterations):
    while True:
        col = _entering(T[-1], tolerance)
        if col < 0:
            return LpStatus.OPTIMAL, iterations
        row = _leaving(T, col, basis, tolerance)
        if row < 0:
            return LpStatus.UNBOUNDED, iterations
        if iterations >= max_iterations:
            logger.debug("Tableau at the iteration limit:\n%s", np.array2string(T, precision=4))
            raise LpError(f"Simplex did not finish within {max_iterations} iterations.")
        _pivot(T, row, col)
        basis[row] = col
        iterations += 1


def _prune_empty_rows(matrix, rhs, tolerance, equality):
    """Drop rows without coefficients; returns None if one of them is violated."""
    empty = ~np.any(np.abs(matrix) > 0.0, axis=1)
    if equality:
        violated = np.abs(rhs[empty]) > tolerance
    else:
        violated = rhs[empty] < -tolerance
    if np.any(violated):
        return None
    return matrix[~empty], rhs[~empty]


def solve(problem, tolerance=None, max_iterations=None):
    """Solve `problem`; infeasible and unbounded problems are reported in the status."""
    tolerance = lsd_setting('LP_TOLERANCE', tolerance)
    max_iterations = lsd_setting('LP_MAX_ITERATIONS', max_iterations)

    inequalities = _prune_empty_rows(problem.G, problem.h, tolerance, equality=False)
    equalities = _prune_empty_rows(problem.A, problem.b, tolerance, equality=True)
    if inequalities is None or equalities is None:
        return LpSolution(LpStatus.INFEASIBLE)
    G, h = inequalities
    A, b = equalities

    n = problem.n_variables
    m_ineq, m_eq = G.shape[0], A.shape[0]
    m = m_ineq + m_eq

    # Rows with a negative right-hand side are negated and get an artificial variable.
    flipped = h < 0
    signs = np.where(flipped, -1.0, 1.0)
    eq_signs = np.where(b < 0, -1.0, 1.0)
    artificial_rows = list(np.flatnonzero(flipped)) + [m_ineq + r for r in range(m_eq)]
    n_art = len(artificial_rows)
    art_start = n + m_ineq

    T = np.zeros((m + 1, n + m_ineq + n_art + 1))
    T[:m_ineq, :n] = G * signs[:, None]
    T[:m_ineq, n:art_start] = np.diag(signs)
    T[:m_ineq, -1] = h * signs
    T[m_ineq:m, :n] = A * eq_signs[:, None]
    T[m_ineq:m, -1] = b * eq_signs

    basis = [n + r for r in range(m_ineq)] + [None] * m_eq
    for k, row in enumerate(artificial_rows):
        T[row, art_start + k] = 1.0
        basis[row] = art_start + k

    # Phase 1: maximize minus the sum of the artificial variables.
    iterations = 0
    if n_art:
        T[-1, art_start:-1] = 1.0
        for row in artificial_rows:
            T[-1] -= T[row]
        _, iterations = _run(T, basis, tolerance, max_iterations, iterations)
        if T[-1, -1] < -tolerance:
            logger.debug("Phase 1 ended at %.3g after %s pivots: infeasible.", T[-1, -1], iterations)
            return LpSolution(LpStatus.INFEASIBLE, iterations=iterations)

        keep = np.ones(m + 1, dtype=bool)
        for row in range(m):
            if basis[row] < art_start:
                continue
            candidates = np.flatnonzero(np.abs(T[row, :art_start]) > tolerance)
            if candidates.size:
                _pivot(T, row, int(candidates[0]))
                basis[row] = int(candidates[0])
            else:
                keep[row] = False
        basis = [col for row, col in enumerate(basis) if keep[row]]
        T = np.delete(T[keep], np.s_[art_start:art_start + n_art], axis=1)

    # Phase 2.
    T[-1] = 0.0
    T[-1, :n] = -problem.objective
    for row, col in enumerate(basis):
        if col < n and problem.objective[col] != 0.0:
            T[-1] += problem.objective[col] * T[row]
    status, iterations = _run(T, basis, tolerance, max_iterations, iterations)
    if status == LpStatus.UNBOUNDED:
        return LpSolution(status, iterations=iterations)

    x = np.zeros(T.shape[1] - 1)
    for row, col in enumerate(basis):
        x[col] = T[row, -1]
    x = np.clip(x[:n], 0.0, None)
    logger.debug("LP with %s variables and %s rows solved in %s pivots.", n, m, iterations)
    return LpSolution(
            LpStatus.OPTIMAL,
            x=x,
            objective=float(problem.objective @ x) + problem.offset,
            iterations=iterations,
    )


def solve_with_fixings(problem, fixings, tolerance=None, max_iterations=None):
    """Solve `problem` with the (variable, value) pairs of `fixings` substituted out."""
    values = {}
    for var, value in fixings:
        if not 0 <= var < problem.n_variables:
            raise LpError(f"Cannot fix variable {var} of a problem with {problem.n_variables}.")
        if values.get(var, value) != value:
            return LpSolution(LpStatus.INFEASIBLE)
        values[var] = float(value)
    if not values:
        return solve(problem, tolerance, max_iterations)

    fixed = np.zeros(problem.n_variables)
    fixed[list(values)] = list(values.values())
    free = np.ones(problem.n_variables, dtype=bool)
    free[list(values)] = False

    reduced = LpProblem(
            problem.objective[free],
            problem.G[:, free], problem.h - problem.G @ fixed,
            problem.A[:, free], problem.b - problem.A @ fixed,
            box=False,
            offset=problem.offset + float(problem.objective @ fixed),
    )
    solution = solve(reduced, tolerance, max_iterations)
    if not solution.optimal:
        return solution

    x = fixed.copy()
    x[free] = solution.x
    return LpSolution(LpStatus.OPTIMAL, x=x, objective=solution.objective,
                      iterations=solution.iterations)
