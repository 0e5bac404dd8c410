"""
Binary program of the best-block problem, and its inverse.

Row families, with look-back terms before step 0 dropped:
    AC   one variable is active at every step
    CA   the second step is a first pull (general encoding, d >= 2)
    UFP  at most one first pull per arm
    FPF  an arm's first pull precedes its other pulls
    TC   Y[i, j, t] needs a pull of i at t - j and none since
    TC+  Y+[i, j, t] needs a pull of i at t - j - 1 and none since
    TC-1 Y-[i, 1, t] needs a first or positive-state pull of i at t - 1
    TC-2 Y-[i, j, t] needs Y-[i, j - 1, t - 1]
    BOX  z <= 1
"""
import functools
import logging
from dataclasses import dataclass

import numpy as np

from blocks.values import in_block_cells, validate_block
from core.conf import lsd_setting
from core.exceptions import DimensionError, InfeasiblePointError
from core.rewards import Regime
from ilp.layout import VariableLayout
from lp.simplex import LpProblem

logger = logging.getLogger(__name__)


class _Rows:
    def __init__(self):
        self.tags = []
        self.terms = []
        self.rhs = []

    def add(self, tag, terms, rhs=0.0):
        coefficients = {}
        for var, coefficient in terms:
            coefficients[var] = coefficients.get(var, 0.0) + coefficient
        self.tags.append(tag)
        self.terms.append(coefficients)
        self.rhs.append(float(rhs))

    def dense(self, n):
        matrix = np.zeros((len(self.terms), n))
        for row, coefficients in enumerate(self.terms):
            for var, coefficient in coefficients.items():
                matrix[row, var] = coefficient
        matrix.setflags(write=False)
        rhs = np.array(self.rhs)
        rhs.setflags(write=False)
        return matrix, rhs, tuple(self.tags)


@dataclass(frozen=True)
class ConstraintSystem:
    G: np.ndarray
    h: np.ndarray
    A: np.ndarray
    b: np.ndarray
    inequality_tags: tuple
    equality_tags: tuple

    def violations(self, z, tolerance=1e-9):
        """Tags of the rows `z` violates, equalities first."""
        equality = np.abs(self.A @ z - self.b) > tolerance
        inequality = self.G @ z - self.h > tolerance
        return ([tag for tag, bad in zip(self.equality_tags, equality) if bad]
                + [tag for tag, bad in zip(self.inequality_tags, inequality) if bad])


def _positive_transitions(layout, rows):
    d = layout.block_length
    for i in range(layout.n_arms):
        for j in range(1, d + 1):
            for t in range(d):
                terms = [(layout.y(i, j, t), 1.0)]
                if t - j >= 0:
                    terms += [(var, -1.0) for var in layout.pulls(i, t - j)]
                terms += [(layout.y(i, j - s, t - s), 1.0) for s in range(1, j) if t - s >= 0]
                rows.add(f"TC[i={i},j={j},t={t}]", terms)


def _general_transitions(layout, rows):
    d = layout.block_length
    positive = range(1, d + 1)
    for i in range(layout.n_arms):
        for j in positive:
            for t in range(d):
                terms = [(layout.y(i, j, t), 1.0)]
                if t - j - 1 >= 0:
                    terms += [(var, -1.0) for var in layout.pulls(i, t - j - 1)]
                terms += [(layout.y(i, j - s, t - s), 1.0) for s in range(1, j) if t - s >= 0]
                if t - j >= 0:
                    terms += [(layout.y(i, -k, t - j), 1.0) for k in positive]
                rows.add(f"TC+[i={i},j={j},t={t}]", terms)
        for t in range(d):
            terms = [(layout.y(i, -1, t), 1.0)]
            if t >= 1:
                terms += [(layout.f(i, t - 1), -1.0)]
                terms += [(layout.y(i, k, t - 1), -1.0) for k in positive]
            rows.add(f"TC-1[i={i},t={t}]", terms)
        for j in range(2, d + 1):
            for t in range(d):
                terms = [(layout.y(i, -j, t), 1.0)]
                if t >= 1:
                    terms.append((layout.y(i, -(j - 1), t - 1), -1.0))
                rows.add(f"TC-2[i={i},j={j},t={t}]", terms)


@functools.lru_cache(maxsize=64)
def constraint_system(layout):
    """Rows of the binary program; they depend on the layout only."""
    d = layout.block_length
    equalities = _Rows()
    inequalities = _Rows()

    for t in range(d):
        equalities.add(f"AC[t={t}]", [(var, 1.0) for var in layout.variables_at(t)], 1.0)
    if layout.general and d >= 2:
        equalities.add("CA", [(layout.f(i, 1), 1.0) for i in range(layout.n_arms)], 1.0)

    for i in range(layout.n_arms):
        inequalities.add(f"UFP[i={i}]", [(layout.f(i, t), 1.0) for t in range(d)], 1.0)
    for i in range(layout.n_arms):
        for t in range(d):
            terms = [(layout.y(i, cell, t), 1.0) for cell in layout.cells]
            terms += [(layout.f(i, s), -1.0) for s in range(t)]
            inequalities.add(f"FPF[i={i},t={t}]", terms)

    if layout.general:
        _general_transitions(layout, inequalities)
    else:
        _positive_transitions(layout, inequalities)

    for var in range(layout.size):
        inequalities.add(f"BOX[k={var}]", [(var, 1.0)], 1.0)

    G, h, inequality_tags = inequalities.dense(layout.size)
    A, b, equality_tags = equalities.dense(layout.size)
    logger.debug("Built %s inequality and %s equality rows for %s.", len(h), len(b), layout)
    return ConstraintSystem(G, h, A, b, inequality_tags, equality_tags)


def _format_terms(coefficients, layout):
    terms = [f"{coefficient:+g} {layout.label(var)}"
             for var, coefficient in sorted(coefficients) if coefficient != 0.0]
    return ' '.join(terms) or '0'


@dataclass(frozen=True)
class IlpInstance:
    layout: VariableLayout
    objective: np.ndarray
    system: ConstraintSystem

    @property
    def regime(self):
        return self.layout.regime

    @property
    def n_variables(self):
        return self.layout.size

    def relaxation(self):
        """LP relaxation; the box rows are already part of the system."""
        return LpProblem(self.objective, self.system.G, self.system.h,
                         self.system.A, self.system.b, box=False)

    def objective_value(self, z):
        return float(self.objective @ np.asarray(z, dtype=float))

    def violations(self, z, tolerance=1e-9):
        return self.system.violations(np.asarray(z, dtype=float), tolerance)

    def dump(self):
        """Plain-text listing of the objective and every tagged row."""
        layout = self.layout
        encoding = 'general' if layout.general else 'positive_only'

        def row_terms(matrix, row):
            return [(int(var), float(matrix[row, var])) for var in np.flatnonzero(matrix[row])]

        objective = [(int(var), float(self.objective[var])) for var in np.flatnonzero(self.objective)]
        lines = [
            f"# {encoding} arms={layout.n_arms} block_length={layout.block_length} "
            f"variables={layout.size}",
            f"maximize: {_format_terms(objective, layout)}",
        ]
        for row, tag in enumerate(self.system.equality_tags):
            lines.append(f"{tag}: {_format_terms(row_terms(self.system.A, row), layout)} "
                         f"= {self.system.b[row]:g}")
        for row, tag in enumerate(self.system.inequality_tags):
            lines.append(f"{tag}: {_format_terms(row_terms(self.system.G, row), layout)} "
                         f"<= {self.system.h[row]:g}")
        return '\n'.join(lines) + '\n'


def encode(snapshot, block_length, regime=None, first_pull=None):
    """Binary program whose optimum is the best block under the UCBs of `snapshot`.

    Every Y variable is priced at the UCB of its cell (0 beyond the
    snapshot), every F variable at `first_pull[i, t]` (0 when omitted).
    """
    regime = snapshot.regime if regime is None else Regime(regime)
    if regime != snapshot.regime:
        raise DimensionError(
                f"A {snapshot.regime.value} snapshot cannot price the {regime.value} encoding."
        )
    if snapshot.n_states < block_length - 1:
        raise DimensionError(
                f"Blocks of length {block_length} need {block_length - 1} state cells, "
                f"the snapshot has {snapshot.n_states}."
        )
    layout = VariableLayout(snapshot.n_arms, block_length, regime)
    snapshot = snapshot.resolved(block_length)

    objective = np.zeros(layout.size)
    for arm in range(layout.n_arms):
        for cell in layout.cells:
            if abs(cell) > snapshot.n_states:
                continue
            value = snapshot.value(arm, cell)
            for t in range(block_length):
                objective[layout.y(arm, cell, t)] = value
    if first_pull is not None:
        first_pull = np.asarray(first_pull, dtype=float)
        if first_pull.shape != (layout.n_arms, block_length):
            raise DimensionError(
                    f"First-pull values of shape {first_pull.shape} do not match "
                    f"{layout.n_arms} arms and blocks of {block_length}."
            )
        for arm in range(layout.n_arms):
            for t in range(block_length):
                objective[layout.f(arm, t)] = first_pull[arm, t]

    objective.setflags(write=False)
    return IlpInstance(layout, objective, constraint_system(layout))


def block_variables(block, layout):
    """Flat index of the active variable at every step of `block`."""
    block = validate_block(block, layout.n_arms, layout.regime)
    if len(block) > layout.block_length:
        raise DimensionError(f"Block {list(block)} is longer than {layout.block_length}.")
    return [
        layout.f(arm, t) if cell is None else layout.y(arm, cell, t)
        for t, (arm, cell) in enumerate(zip(block, in_block_cells(block, layout.regime)))
    ]


def feasible_point(block, layout):
    """Binary encoding of `block`."""
    if len(block) != layout.block_length:
        raise DimensionError(f"Block {list(block)} does not have length {layout.block_length}.")
    z = np.zeros(layout.size)
    z[block_variables(block, layout)] = 1.0
    return z


def decode(z, layout, tolerance=None):
    """Block encoded by the binary point `z`."""
    tolerance = lsd_setting('INTEGRALITY_TOLERANCE', tolerance)
    z = np.asarray(z, dtype=float)
    if z.shape != (layout.size,):
        raise DimensionError(f"Point of shape {z.shape} does not match {layout.size} variables.")
    if np.any(np.abs(z - np.round(z)) > tolerance):
        raise InfeasiblePointError("Point is not binary.", tag='INTEGRALITY')
    z = np.round(z)

    violated = constraint_system(layout).violations(z)
    if violated:
        raise InfeasiblePointError(f"Point violates {violated[0]}.", tag=violated[0])

    block = []
    for t in range(layout.block_length):
        active = [var for var in layout.variables_at(t) if z[var] == 1.0]
        block.append(layout.describe(active[0])[1])
    return tuple(block)
