"""
Block learners on LSD bandits and the greedy oracle baseline.

Every learner round returns a RoundTrace holding the block it played,
the pulls and the cells it updated. Statistics are updated only after
the whole block was played, and bounds are refreshed once per round.
"""
import enum
import logging

import numpy as np

from algos.trace import RoundTrace, RunTrace, Step
from algos.ucb import UcbTable, cell_for_state, first_pull_values
from blocks.oracles import TIE_TOLERANCE
from blocks.values import calibration_state, in_block_cells
from bnb.solver import exhaustive_block, solve_block
from core.exceptions import ConfigError
from core.rewards import Regime

logger = logging.getLogger(__name__)


class Solver(str, enum.Enum):
    """How a round's block is chosen."""
    BNB = 'bnb'
    ENUMERATE = 'enumerate'


def choose_block(snapshot, block_length, first_pull=None, solver=Solver.BNB, cap=None):
    if Solver(solver) == Solver.ENUMERATE:
        return exhaustive_block(snapshot, block_length, first_pull=first_pull, cap=cap)
    return solve_block(snapshot, block_length, first_pull=first_pull)


def _play(env, block):
    steps = []
    for arm in block:
        tau = env.state[arm]
        expected = env.expected(arm)
        reward, _ = env.step(arm)
        steps.append(Step(arm=arm, tau=tau, reward=reward, expected=expected))
    return steps


def _update_at_known_states(ucb, steps, start):
    updates = []
    for offset, step in enumerate(steps):
        cell = cell_for_state(step.tau, ucb.n_states, ucb.regime)
        ucb.update(step.arm, cell, step.reward)
        updates.append((start + offset, step.arm, cell, step.reward))
    return updates


def isi_combucb1_round(ucb, env, block_length, solver=Solver.BNB, cap=None):
    """One round of the calibrated-block learner.

    First pulls are played for their reward only; every other pull updates
    the cell of its in-block state.
    """
    start = env.t
    choice = choose_block(ucb.snapshot(), block_length, solver=solver, cap=cap)
    steps = _play(env, choice.block)

    updates = []
    for offset, (step, cell) in enumerate(zip(steps, in_block_cells(choice.block, ucb.regime))):
        if cell is None:
            continue
        ucb.update(step.arm, cell, step.reward)
        updates.append((start + offset, step.arm, cell, step.reward))
    ucb.end_round()
    return RoundTrace(block=choice.block, estimate=choice.value, steps=steps, updates=updates)


def _known_state_block(ucb, env, block_length, solver, cap):
    snapshot = ucb.snapshot().resolved(block_length)
    first_pull = first_pull_values(snapshot, env.state, block_length)
    return choose_block(snapshot, block_length, first_pull=first_pull, solver=solver, cap=cap)


def combucb1_round(ucb, env, block_length, solver=Solver.BNB, cap=None):
    """One round of CombUCB1 on the plain objective from the true state.

    Every pull, first pulls included, updates the cell of the arm's
    environment state.
    """
    start = env.t
    choice = _known_state_block(ucb, env, block_length, solver, cap)
    steps = _play(env, choice.block)
    updates = _update_at_known_states(ucb, steps, start)
    ucb.end_round()
    return RoundTrace(block=choice.block, estimate=choice.value, steps=steps, updates=updates)


def cs_round(ucb, env, permutation, block_length, solver=Solver.BNB, cap=None):
    """Calibrate with `permutation`, then play the best block from the calibrated state.

    Calibration pulls count towards the reward and, their states being
    known, update their cells like every pull of the block.
    """
    permutation = tuple(permutation)
    calibration_state(permutation, env.n_arms)  # raises unless a permutation of the arms
    start = env.t
    calibration = _play(env, permutation)
    choice = _known_state_block(ucb, env, block_length, solver, cap)
    steps = calibration + _play(env, choice.block)
    updates = _update_at_known_states(ucb, steps, start)
    ucb.end_round()
    return RoundTrace(
            block=permutation + choice.block,
            estimate=choice.value,
            steps=steps,
            updates=updates,
    )


def greedy_arms(table, state):
    """Arms whose expected reward in `state` is maximal."""
    means = table.means(state)
    return np.flatnonzero(means >= means.max() - TIE_TOLERANCE)


def oracle_greedy_step(env, table, rng):
    """Arm of maximal expected reward in the current state, ties broken by `rng`."""
    return int(rng.choice(greedy_arms(table, env.state)))


def run_learner(spec, env, horizon, block_size, regime=None, alpha=None, rng=None,
                solver=Solver.BNB, cap=None):
    """Play `spec` in `env` until `horizon` steps are reached.

    The last round is played in full, so the trace may run past `horizon`.
    """
    regime = env.table.regime if regime is None else Regime(regime)
    trace = RunTrace()

    if spec.name == 'oracle_greedy':
        if rng is None:
            raise ConfigError("The greedy oracle needs a random generator for tie-breaking.")
        while env.t < horizon:
            arm = oracle_greedy_step(env, env.table, rng)
            trace.extend(RoundTrace(block=(arm,), steps=_play(env, (arm,))))
        return trace

    ucb = UcbTable(env.n_arms, spec.n_cells(block_size, env.n_arms), regime, alpha)
    block_length = spec.block_length(block_size, env.n_arms)

    while env.t < horizon:
        if spec.name == 'isi':
            round_trace = isi_combucb1_round(ucb, env, block_length, solver, cap)
        elif spec.name == 'combucb1':
            round_trace = combucb1_round(ucb, env, block_length, solver, cap)
        elif spec.name == 'cs':
            round_trace = cs_round(ucb, env, spec.permutation, block_size, solver, cap)
        else:
            raise ConfigError(f"Unknown algorithm {spec.name!r}.")
        trace.extend(round_trace)
        logger.debug("%s round %s: block %s, estimate %.6g.",
                     spec.label, ucb.t - 1, list(round_trace.block), round_trace.estimate)
    return trace
