"""
Instance files and instance generators.

The experiment tables below are written on delays, the number of steps
since the arm was last pulled (1 for a consecutive pull). `delay_table`
re-indexes them on last-switch states: state s >= 1 is delay s + 1 and
every negative state is delay 1.
"""
import json
import logging
import math
from pathlib import Path

import numpy as np
from rest_framework import serializers

from core.exceptions import InstanceError, RewardTableError
from core.rewards import RewardTable
from harness.serializers import InstanceSerializer, format_errors

logger = logging.getLogger(__name__)

EXAMPLES = ('seasonal', 'satiation', 'anti_kleinberg', 'tight')


def load_instance(path):
    """Read and validate an instance file."""
    try:
        with open(path) as f:
            document = json.load(f)
    except OSError as error:
        raise InstanceError(f"Cannot read instance {path}: {error}") from error
    except json.JSONDecodeError as error:
        raise InstanceError(f"Instance {path} is not valid JSON: {error}") from error
    return instance_from_dict(document, source=path)


def instance_from_dict(document, source='instance'):
    serializer = InstanceSerializer(data=document)
    if not serializer.is_valid():
        details = '\n'.join(format_errors(serializer.errors))
        raise InstanceError(f"Invalid {source}:\n{details}")
    try:
        return serializer.save()
    except (RewardTableError, serializers.ValidationError) as error:
        raise InstanceError(f"Invalid {source}: {error}") from error


def resolve_instance(reference):
    """Table named by `reference`: `example:<name>` or the path of an instance file."""
    kind, _, name = str(reference).partition(':')
    if kind == 'example' and name:
        return example_instance(name)
    return load_instance(reference)


def dump_instance(table, path):
    """Write `table` as an instance file."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, 'w') as f:
        json.dump(table.to_dict(), f, indent=2)
        f.write('\n')
    logger.info("Instance written to %s.", path)
    return path


def delay_table(functions, max_delay):
    """Tabulate rewards given as functions of the delay since the last pull."""
    tau_max = max(max_delay - 1, 1)
    states = range(1, tau_max + 1)
    return RewardTable(
            negative=[[mu(1)] * tau_max for mu in functions],
            positive=[[mu(tau + 1) for tau in states] for mu in functions],
    )


def seasonal_instance():
    """Five arms: a spike at delay 3, a bonus at delay 6 and a plateau from delay 9, three flat arms."""
    def spike(delay):
        return 0.95 if delay == 3 else 0.0

    def seasonal(delay):
        if delay >= 9:
            return 0.96
        if delay == 6:
            return 0.16
        return 0.14

    def flat(delay):
        return 0.15

    return delay_table([spike, seasonal, flat, flat, flat], max_delay=9)


def satiation_instance():
    """Two arms: one pays 0.95 after a rest and 0.06 when repeated, the other pays 0.05."""
    def rested(delay):
        return 0.06 if delay == 1 else 0.95

    def flat(delay):
        return 0.05

    return delay_table([rested, flat], max_delay=2)


def anti_kleinberg_instance(epsilon):
    """Two arms on which the greedy oracle earns 1 + (T - 1) * epsilon."""
    if not 0 < epsilon < 1:
        raise InstanceError(f"epsilon must lie in (0, 1), got {epsilon}.")
    return RewardTable(negative=[[epsilon], [0.0]], positive=[[1.0], [0.0]])


def tight_instance(n_arms):
    """K arms paying 1 from state K - 1 on."""
    if n_arms < 2:
        raise InstanceError(f"The tight instance needs at least 2 arms, got {n_arms}.")
    tau_max = max(n_arms - 1, 1)
    return RewardTable.from_functions(
            [lambda tau: float(tau >= n_arms - 1)] * n_arms,
            tau_max=tau_max,
    )


def pinwheel_instance(delays, dense_check=True):
    """Threshold arms paying 1 once their delay reaches d_i, plus an arm paying nothing."""
    delays = [int(delay) for delay in delays]
    if not delays or min(delays) < 1:
        raise InstanceError(f"Pinwheel delays must be positive integers, got {delays}.")
    density = math.fsum(1 / delay for delay in delays)
    if dense_check and abs(density - 1.0) > 1e-12:
        raise InstanceError(f"Pinwheel delays {delays} have density {density:.12g}, not 1.")

    functions = [lambda delay, d=d: float(delay >= d) for d in delays]
    functions.append(lambda delay: 0.0)
    return delay_table(functions, max_delay=max(delays))


def example_instance(name, epsilon=0.1, n_arms=3):
    """Named instance of the experiments and worked examples."""
    if name == 'seasonal':
        return seasonal_instance()
    if name == 'satiation':
        return satiation_instance()
    if name == 'anti_kleinberg':
        return anti_kleinberg_instance(epsilon)
    if name == 'tight':
        return tight_instance(n_arms)
    raise InstanceError(f"Unknown example {name!r}; choose from {', '.join(EXAMPLES)}.")


def random_instance(n_arms, tau_max, rng, constant_negative=True):
    """Uniform random table; the negative side is constant or nondecreasing towards -1."""
    positive = rng.random((n_arms, tau_max))
    if constant_negative:
        negative = np.repeat(rng.random((n_arms, 1)), tau_max, axis=1)
    else:
        negative = np.sort(rng.random((n_arms, tau_max)), axis=1)[:, ::-1]
    return RewardTable(negative=negative, positive=positive)
