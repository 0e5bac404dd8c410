"""
Greedy-in-depth block search scored by LP relaxations.

At every step of the block each arm is tried in turn: the prefix is fixed
in the binary program, the relaxation of the rest is solved, and the arm
with the best relaxed value is committed. Ties go to the lowest arm.

`exhaustive_block` scores every block of the same objective at once and
serves long experiments on small instances.
"""
import functools
import itertools
import logging
from dataclasses import dataclass, field

import numpy as np

from blocks.oracles import check_enumeration_cap
from blocks.values import in_block_cells
from core.conf import lsd_setting
from core.exceptions import BlockError, DimensionError, NoFeasibleContinuationError
from core.rewards import Regime
from ilp.encoding import block_variables, encode, feasible_point
from lp.simplex import solve_with_fixings

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class BlockChoice:
    block: tuple
    value: float
    lp_solves: int
    trace: tuple = field(default=(), repr=False)


def prefix_fixings(prefix, layout):
    """Fixings implied by a block prefix.

    The prefix determines the single active variable at each of its steps;
    it is fixed to 1 and every other variable of those steps to 0.
    """
    if not prefix:
        return []
    active = block_variables(prefix, layout)
    fixings = []
    for t, var in enumerate(active):
        fixings.extend((other, int(other == var)) for other in layout.variables_at(t))
    return fixings


def _candidates(prefix, n_arms, regime):
    for arm in range(n_arms):
        if regime == Regime.GENERAL and len(prefix) == 1 and arm == prefix[0]:
            continue
        yield arm


def solve_block(snapshot, block_length, regime=None, first_pull=None, tolerance=None):
    """Block chosen greedily under the UCBs of `snapshot`."""
    tolerance = lsd_setting('LP_TOLERANCE', tolerance)
    instance = encode(snapshot, block_length, regime, first_pull)
    layout = instance.layout
    problem = instance.relaxation()

    prefix = []
    trace = []
    lp_solves = 0
    for depth in range(block_length):
        best_arm, best_score = None, None
        for arm in _candidates(prefix, layout.n_arms, layout.regime):
            solution = solve_with_fixings(problem, prefix_fixings(prefix + [arm], layout))
            lp_solves += 1
            if not solution.optimal:
                logger.debug("Depth %s: arm %s has no feasible continuation (%s).",
                             depth, arm, solution.status.value)
                continue
            trace.append((depth, arm, solution.objective))
            if best_score is None or solution.objective > best_score + tolerance:
                best_arm, best_score = arm, solution.objective
        if best_arm is None:
            raise NoFeasibleContinuationError(
                    f"No arm extends the prefix {prefix} at depth {depth}."
            )
        logger.debug("Depth %s: committed arm %s with relaxed value %.6g.", depth, best_arm, best_score)
        prefix.append(best_arm)

    block = tuple(prefix)
    return BlockChoice(
            block=block,
            value=instance.objective_value(feasible_point(block, layout)),
            lp_solves=lp_solves,
            trace=tuple(trace),
    )


def relaxed_score(prefix, snapshot, block_length, regime=None, first_pull=None):
    """LP optimum over the completions of `prefix`."""
    if len(prefix) > block_length:
        raise BlockError(f"Prefix {list(prefix)} is longer than the block length {block_length}.")
    instance = encode(snapshot, block_length, regime, first_pull)
    solution = solve_with_fixings(instance.relaxation(), prefix_fixings(list(prefix), instance.layout))
    if not solution.optimal:
        raise NoFeasibleContinuationError(f"Prefix {list(prefix)} has no feasible continuation.")
    return solution.objective


def format_trace(trace):
    """One `depth arm score` line per scored candidate."""
    return '\n'.join(f"depth={depth} arm={arm} score={score:.6f}" for depth, arm, score in trace)


@functools.lru_cache(maxsize=32)
def _price_index(n_arms, block_length, n_states, regime):
    """Index of the price of every step of every block, in enumeration order.

    Prices are laid out as first pulls (arm, t), then positive cells,
    then negative cells, then a trailing 0 for cells beyond the snapshot.
    """
    regime = Regime(regime)
    positive_base = n_arms * block_length
    negative_base = positive_base + n_arms * n_states
    zero = negative_base + (n_arms * n_states if regime == Regime.GENERAL else 0)

    def price(arm, cell, t):
        if cell is None:
            return arm * block_length + t
        if abs(cell) > n_states:
            return zero
        if cell > 0:
            return positive_base + arm * n_states + cell - 1
        return negative_base + arm * n_states - cell - 1

    blocks = []
    rows = []
    for block in itertools.product(range(n_arms), repeat=block_length):
        if regime == Regime.GENERAL and block_length >= 2 and block[0] == block[1]:
            continue
        blocks.append(block)
        cells = in_block_cells(block, regime)
        rows.append([price(arm, cell, t) for t, (arm, cell) in enumerate(zip(block, cells))])
    return tuple(blocks), np.array(rows, dtype=int)


def exhaustive_block(snapshot, block_length, regime=None, first_pull=None, cap=None):
    """Exact best block under the UCBs of `snapshot`, by vectorized enumeration.

    Scores the same objective as the binary program; ties go to the
    lexicographically first block.
    """
    regime = snapshot.regime if regime is None else Regime(regime)
    if regime != snapshot.regime:
        raise DimensionError(
                f"A {snapshot.regime.value} snapshot cannot price the {regime.value} objective."
        )
    check_enumeration_cap(snapshot.n_arms, block_length, cap)
    snapshot = snapshot.resolved(block_length)
    if first_pull is None:
        first_pull = np.zeros((snapshot.n_arms, block_length))
    first_pull = np.asarray(first_pull, dtype=float)
    if first_pull.shape != (snapshot.n_arms, block_length):
        raise DimensionError(
                f"First-pull values of shape {first_pull.shape} do not match "
                f"{snapshot.n_arms} arms and blocks of {block_length}."
        )

    parts = [first_pull.ravel(), snapshot.positive.ravel()]
    if regime == Regime.GENERAL:
        parts.append(snapshot.negative.ravel())
    prices = np.concatenate(parts + [np.zeros(1)])
    blocks, index = _price_index(snapshot.n_arms, block_length, snapshot.n_states, regime)
    values = prices[index].sum(axis=1)
    best = int(np.argmax(values))
    return BlockChoice(block=blocks[best], value=float(values[best]), lp_solves=0)
