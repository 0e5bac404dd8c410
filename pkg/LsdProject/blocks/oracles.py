"""
Brute-force oracles for best blocks, cycles and sequences on small instances.
"""
import enum
import itertools
import logging
from dataclasses import dataclass

from blocks.values import (
    block_reward,
    calibrated_reward,
    cyclic_average,
    cyclic_value,
)
from core.conf import lsd_setting
from core.exceptions import EnumerationLimitError
from core.rewards import Regime
from core.states import StateVector

logger = logging.getLogger(__name__)

# Values closer than this count as ties; ties keep the lexicographically first candidate.
TIE_TOLERANCE = 1e-12


class Objective(str, enum.Enum):
    PLAIN = 'plain'
    CALIBRATED = 'calibrated'
    DOUBLE = 'double'


@dataclass(frozen=True)
class OracleResult:
    block: tuple
    value: float

    def to_dict(self):
        return {'block': list(self.block), 'value': self.value}


def check_enumeration_cap(n_arms, length, cap):
    cap = lsd_setting('ENUMERATION_CAP', cap)
    if n_arms ** length > cap:
        raise EnumerationLimitError(
                f"{n_arms}**{length} candidates exceed the enumeration cap {cap}."
        )


def _argmax(candidates, score):
    best = None
    for candidate in candidates:
        value = score(candidate)
        if best is None or value > best.value + TIE_TOLERANCE:
            best = OracleResult(block=candidate, value=value)
    return best


def brute_force_best_block(table, d, objective=Objective.CALIBRATED, state=None, cap=None):
    """Best block of length `d` under `objective`, by enumeration.

    `state` is the initial state of the plain and double objectives
    (all ones when omitted). The double objective scores a block from the
    state it leaves behind when played from `state`.
    """
    objective = Objective(objective)
    check_enumeration_cap(table.n_arms, d, cap)
    state = StateVector.ones(table.n_arms) if state is None else StateVector(state)
    candidates = itertools.product(range(table.n_arms), repeat=d)

    if objective == Objective.PLAIN:
        def score(block):
            return block_reward(block, state, table).total
    elif objective == Objective.DOUBLE:
        def score(block):
            after = block_reward(block, state, table).terminal_state
            return block_reward(block, after, table).total
    else:
        if table.regime == Regime.GENERAL and d >= 2:
            candidates = (block for block in candidates if block[0] != block[1])

        def score(block):
            return calibrated_reward(block, table).total

    result = _argmax(candidates, score)
    logger.debug("Best %s block of length %s: %s.", objective.value, d, result)
    return result


def brute_force_best_cycle(table, d, horizon=None, cap=None):
    """Block of length `d` whose repetition earns the most.

    Scores the exact value over `horizon` steps, or the long-run average
    per step when `horizon` is omitted.
    """
    check_enumeration_cap(table.n_arms, d, cap)
    if horizon is None:
        def score(block):
            return cyclic_average(block, table)
    else:
        def score(block):
            return cyclic_value(block, table, horizon)

    return _argmax(itertools.product(range(table.n_arms), repeat=d), score)


def brute_force_best_sequence(table, horizon, cap=None):
    """Optimal action sequence of length `horizon` from the all-ones state."""
    check_enumeration_cap(table.n_arms, horizon, cap)

    def search(state, remaining):
        if remaining == 0:
            return 0.0, ()
        best = None
        for arm in range(table.n_arms):
            value, tail = search(state.advance(arm), remaining - 1)
            value += table.mean(arm, state[arm])
            if best is None or value > best[0] + TIE_TOLERANCE:
                best = (value, (arm,) + tail)
        return best

    value, sequence = search(StateVector.ones(table.n_arms), horizon)
    return OracleResult(block=sequence, value=value)
