"""
Derivation of reproducible random streams.
"""
import numpy as np

ENVIRONMENT_STREAM = 0
POLICY_STREAM = 1


def derive_seed(master_seed, *key):
    """64-bit seed of the substream identified by `key` under `master_seed`."""
    sequence = np.random.SeedSequence(entropy=master_seed, spawn_key=tuple(key))
    return int(sequence.generate_state(1, dtype=np.uint64)[0])


def stream_seeds(master_seed, repetition, algorithm_index, paired=False):
    """Seeds of the environment and policy streams of one (algorithm, repetition) run.

    With `paired`, every algorithm of a repetition sees the same environment stream.
    """
    environment_key = 0 if paired else algorithm_index + 1
    return (
        derive_seed(master_seed, repetition, ENVIRONMENT_STREAM, environment_key),
        derive_seed(master_seed, repetition, POLICY_STREAM, algorithm_index),
    )
