"""
Values of blocks: plain, calibrated and cyclic.
"""
import math
from dataclasses import dataclass

from core.exceptions import BlockError, HorizonError
from core.rewards import Regime
from core.states import StateVector


@dataclass(frozen=True)
class BlockValue:
    """Expected reward of a block, step by step."""
    total: float
    per_step: tuple
    first_pull: tuple
    terminal_state: StateVector = None


def validate_block(block, n_arms, regime=Regime.CONSTANT_NEGATIVE):
    """Return `block` as a tuple of arm indices, or raise BlockError."""
    block = tuple(int(arm) for arm in block)
    if not block:
        raise BlockError("A block needs at least one action.")
    for arm in block:
        if not 0 <= arm < n_arms:
            raise BlockError(f"Arm {arm} out of range for {n_arms} arms.")
    if Regime(regime) == Regime.GENERAL and len(block) >= 2 and block[0] == block[1]:
        raise BlockError(
                f"Block {list(block)} repeats its first action; "
                "the first two actions must differ in the general regime."
        )
    return block


def first_pulls(block):
    """Mask of the steps where an arm appears for the first time in `block`."""
    seen = set()
    mask = []
    for arm in block:
        mask.append(arm not in seen)
        seen.add(arm)
    return tuple(mask)


def in_block_states(block):
    """Last-switch state of every non-first pull, counted inside the block.

    The first in-block pull of an arm gets None. A pull after a gap of
    `delay` steps sits at state `delay - 1`; a consecutive pull sits at
    minus the length of the run so far.
    """
    last_pull = {}
    run = {}
    states = []
    for step, arm in enumerate(block):
        if arm not in last_pull:
            states.append(None)
            run[arm] = 1
        elif last_pull[arm] == step - 1:
            states.append(-run[arm])
            run[arm] += 1
        else:
            states.append(step - last_pull[arm] - 1)
            run[arm] = 1
        last_pull[arm] = step
    return tuple(states)


def in_block_cells(block, regime=Regime.CONSTANT_NEGATIVE):
    """UCB cell of every non-first pull of `block`, None for first pulls.

    In the constant-negative regime the cell is the delay since the arm's
    previous pull (1 for a consecutive pull). In the general regime it is
    the signed in-block state.
    """
    states = in_block_states(block)
    if Regime(regime) == Regime.GENERAL:
        return states
    return tuple(
            None if tau is None else (1 if tau < 0 else tau + 1)
            for tau in states
    )


def block_reward(block, state, table):
    """Expected reward r(B | state) of playing `block` from `state`."""
    block = validate_block(block, table.n_arms)
    state = StateVector(state)
    per_step = []
    for arm in block:
        per_step.append(table.mean(arm, state[arm]))
        state = state.advance(arm)
    return BlockValue(
            total=math.fsum(per_step),
            per_step=tuple(per_step),
            first_pull=first_pulls(block),
            terminal_state=state,
    )


def calibrated_reward(block, table, regime=None):
    """Calibrated reward of `block`: first pulls count 0, the rest read in-block states.

    The value does not depend on the state the block is played from.
    """
    regime = table.regime if regime is None else Regime(regime)
    block = validate_block(block, table.n_arms, regime)
    per_step = [
        0.0 if tau is None else table.mean(arm, tau)
        for arm, tau in zip(block, in_block_states(block))
    ]
    return BlockValue(
            total=math.fsum(per_step),
            per_step=tuple(per_step),
            first_pull=first_pulls(block),
    )


def calibration_state(permutation, n_arms):
    """State reached by playing a permutation of all arms from the all-ones state."""
    permutation = tuple(int(arm) for arm in permutation)
    if sorted(permutation) != list(range(n_arms)):
        raise BlockError(f"{list(permutation)} is not a permutation of {n_arms} arms.")
    state = StateVector.ones(n_arms)
    for arm in permutation:
        state = state.advance(arm)
    return state


def _block_orbit(block, table):
    """Totals of successive plays of `block` from the all-ones state.

    Plays stop when a saturated start state recurs; returns the totals and
    the index of the play the recurrence goes back to.
    """
    state = StateVector.ones(table.n_arms)
    seen = {}
    totals = []
    while state not in seen:
        seen[state] = len(totals)
        value = block_reward(block, state, table)
        totals.append(value.total)
        state = value.terminal_state.saturate(table.tau_max)
    return totals, seen[state]


def cyclic_value(block, table, horizon):
    """Exact expected reward of repeating `block` for `horizon` steps from the all-ones state."""
    block = validate_block(block, table.n_arms)
    if horizon < 1 or horizon % len(block):
        raise HorizonError(
                f"Horizon {horizon} is not a positive multiple of the block length {len(block)}."
        )
    plays = horizon // len(block)
    totals, cycle_start = _block_orbit(block, table)
    if plays <= len(totals):
        return math.fsum(totals[:plays])

    cycle = totals[cycle_start:]
    laps, rest = divmod(plays - cycle_start, len(cycle))
    return (math.fsum(totals[:cycle_start])
            + laps * math.fsum(cycle)
            + math.fsum(cycle[:rest]))


def cyclic_average(block, table):
    """Long-run per-step reward of repeating `block` forever."""
    block = validate_block(block, table.n_arms)
    totals, cycle_start = _block_orbit(block, table)
    cycle = totals[cycle_start:]
    return math.fsum(cycle) / (len(cycle) * len(block))
