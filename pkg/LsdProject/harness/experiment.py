"""
Seeded multi-repetition experiments.

Every (algorithm, repetition) pair runs in a fresh environment whose
random stream is derived from the master seed, so a configuration fully
determines every output file.
"""
import json
import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path

import django
import numpy as np
import pandas as pd

from algos.learners import Solver, run_learner
from algos.trace import TRACE_COLUMNS
from core.environment import Environment
from core.exceptions import ConfigError
from core.rewards import Regime
from core.seeding import stream_seeds
from harness.instances import resolve_instance
from harness.serializers import ExperimentConfigSerializer, format_errors

logger = logging.getLogger(__name__)

TRACE_SCHEMA = 'lsd-trace/1'
FLOAT_FORMAT = '%.9f'


@dataclass(frozen=True)
class ExperimentResult:
    trace_path: Path
    curves_path: Path
    summary_path: Path
    summary: dict


def load_config(path=None, **overrides):
    """Validated experiment configuration from a JSON file and flag overrides.

    Overrides left at None keep the file value. A relative instance path
    read from the file is taken relative to the file.
    """
    document = {}
    if path is not None:
        try:
            with open(path) as f:
                document = json.load(f)
        except OSError as error:
            raise ConfigError(f"Cannot read config {path}: {error}") from error
        except json.JSONDecodeError as error:
            raise ConfigError(f"Config {path} is not valid JSON: {error}") from error
        if not isinstance(document, dict):
            raise ConfigError(f"Config {path} must hold a JSON object.")
        instance = document.get('instance')
        if isinstance(instance, str) and not instance.startswith('example:'):
            candidate = Path(path).parent / instance
            if not Path(instance).is_absolute() and candidate.exists():
                document['instance'] = str(candidate)

    document.update({key: value for key, value in overrides.items() if value is not None})
    serializer = ExperimentConfigSerializer(data=document)
    if not serializer.is_valid():
        details = '\n'.join(format_errors(serializer.errors))
        raise ConfigError(f"Invalid experiment config:\n{details}")
    return serializer.save()


def effective_horizon(horizon, block_length):
    """Smallest multiple of `block_length` not below `horizon`."""
    return block_length * math.ceil(horizon / block_length)


def _regime(config, table):
    if config.regime is None:
        return table.regime
    regime = Regime(config.regime)
    if regime == Regime.CONSTANT_NEGATIVE and not table.constant_negative:
        raise ConfigError("The instance is not constant on negative states; use the general regime.")
    return regime


def run_repetition(config, table, index, spec, repetition):
    """One full run of `spec`; returns its trace as a frame."""
    env_seed, policy_seed = stream_seeds(config.seed, repetition, index, config.paired)
    env = Environment(table, seed=env_seed, noise=config.noise)
    horizon = effective_horizon(config.horizon, spec.block_length(config.block_size, table.n_arms))
    trace = run_learner(
            spec,
            env,
            horizon,
            config.block_size,
            regime=_regime(config, table),
            alpha=config.alpha,
            rng=np.random.default_rng(policy_seed),
            solver=Solver(config.solver),
            cap=config.enumeration_cap,
    )
    logger.info("%s repetition %s: cumulative reward %.1f over %s steps.",
                spec.label, repetition, trace.cumulative[-1], len(trace))
    return trace.to_frame(rep=repetition, algo=spec.label)


def _run_job(job):
    return run_repetition(*job)


def run_all(config, table):
    """Trace frames of every (algorithm, repetition) pair, in config order."""
    jobs = [
        (config, table, index, spec, repetition)
        for index, spec in enumerate(config.algorithms)
        for repetition in range(config.repetitions)
    ]
    if config.workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=config.workers, initializer=django.setup) as pool:
            return list(pool.map(_run_job, jobs))
    return [_run_job(job) for job in jobs]


def mean_curves(trace):
    """Mean and standard deviation over repetitions of the cumulative reward at every step."""
    grouped = trace.groupby(['algo', 't'], sort=False)['cum_reward']
    curves = pd.DataFrame({
        'mean_cum_reward': grouped.mean(),
        'std_cum_reward': grouped.std(ddof=0),
    }).reset_index()
    return curves[['algo', 't', 'mean_cum_reward', 'std_cum_reward']]


def summarize(config, table, trace):
    algorithms = {}
    for spec in config.algorithms:
        frame = trace[trace['algo'] == spec.label]
        steps = int(frame['t'].max()) + 1
        final = frame[frame['t'] == steps - 1]['cum_reward']
        last_quarter = frame[frame['t'] >= steps - steps // 4]
        algorithms[spec.label] = {
            'block_length': spec.block_length(config.block_size, table.n_arms),
            'horizon': steps,
            'final_mean': float(final.mean()),
            'final_std': float(final.std(ddof=0)),
            'average_reward': float(final.mean()) / steps,
            'last_quarter_average': float(last_quarter['reward'].mean()),
        }
    return {
        'schema': TRACE_SCHEMA,
        'config': config.to_dict(),
        'instance': {'K': table.n_arms, 'tau_max': table.tau_max, 'regime': table.regime.value},
        'algorithms': algorithms,
    }


def write_trace(trace, path):
    with open(path, 'w', newline='') as f:
        f.write(f"# schema: {TRACE_SCHEMA}\n")
        trace.to_csv(f, index=False, float_format=FLOAT_FORMAT)


def read_trace(path):
    return pd.read_csv(path, comment='#')


def run_experiment(config):
    """Run every algorithm of `config` and write trace.csv, curves.csv and summary.json."""
    table = resolve_instance(config.instance)
    for spec in config.algorithms:
        spec.check_arms(table.n_arms)
    _regime(config, table)

    logger.info("Running %s on %s (K=%s) with %s repetitions.",
                ', '.join(spec.label for spec in config.algorithms), config.instance,
                table.n_arms, config.repetitions)
    trace = pd.concat(run_all(config, table), ignore_index=True)[TRACE_COLUMNS]

    out = Path(config.out)
    out.mkdir(parents=True, exist_ok=True)
    trace_path = out / 'trace.csv'
    curves_path = out / 'curves.csv'
    summary_path = out / 'summary.json'

    write_trace(trace, trace_path)
    mean_curves(trace).to_csv(curves_path, index=False, float_format=FLOAT_FORMAT)
    summary = summarize(config, table, trace)
    with open(summary_path, 'w') as f:
        json.dump(summary, f, indent=2)
        f.write('\n')
    logger.info("Results written to %s.", out)
    return ExperimentResult(trace_path, curves_path, summary_path, summary)
