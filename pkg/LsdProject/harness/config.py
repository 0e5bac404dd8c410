"""
Experiment configuration.
"""
from dataclasses import dataclass

from core.exceptions import ConfigError

ALGORITHMS = ('isi', 'combucb1', 'oracle_greedy', 'cs')


@dataclass(frozen=True)
class AlgorithmSpec:
    """One learner of an experiment, e.g. `isi` or `cs:4,3,2,1,0`."""
    name: str
    permutation: tuple = None

    @property
    def label(self):
        if self.permutation is None:
            return self.name
        return f"{self.name}:{','.join(str(arm) for arm in self.permutation)}"

    def block_length(self, d, n_arms):
        """Number of steps the learner plays per round."""
        if self.name == 'isi':
            return d + 1
        if self.name == 'combucb1':
            return d
        if self.name == 'cs':
            return n_arms + d
        return 1

    def n_cells(self, d, n_arms):
        """State cells per sign of the learner's UCB table.

        A calibration-sequence round reaches states up to d + K - 1, so
        its table holds d + K cells and no state shares a cell with
        another.
        """
        if self.name == 'cs':
            return d + n_arms
        return d

    def check_arms(self, n_arms):
        if self.permutation is not None and sorted(self.permutation) != list(range(n_arms)):
            raise ConfigError(
                    f"{self.label}: calibration sequence must be a permutation of {n_arms} arms."
            )

    def __str__(self):
        return self.label


def parse_algorithm(text):
    """Parse an algorithm name; `cs:` takes a comma-separated 0-based permutation."""
    name, _, permutation = text.strip().partition(':')
    if name not in ALGORITHMS:
        raise ConfigError(f"Unknown algorithm {text!r}; choose from {', '.join(ALGORITHMS)}.")
    if name != 'cs':
        if permutation:
            raise ConfigError(f"Algorithm {name!r} takes no parameter.")
        return AlgorithmSpec(name)
    try:
        arms = tuple(int(arm) for arm in permutation.split(','))
    except ValueError:
        raise ConfigError(f"Malformed calibration sequence in {text!r}.") from None
    if len(set(arms)) != len(arms):
        raise ConfigError(f"Calibration sequence {text!r} repeats an arm.")
    return AlgorithmSpec(name, arms)


@dataclass(frozen=True)
class ExperimentConfig:
    instance: str
    block_size: int
    horizon: int
    alpha: float
    algorithms: tuple
    repetitions: int
    seed: int = 0
    out: str = 'results'
    regime: str = None
    enumeration_cap: int = None
    workers: int = 1
    paired: bool = False
    noise: bool = True
    solver: str = 'bnb'

    def to_dict(self):
        return {
            'instance': self.instance,
            'block_size': self.block_size,
            'horizon': self.horizon,
            'alpha': self.alpha,
            'algorithms': [spec.label for spec in self.algorithms],
            'repetitions': self.repetitions,
            'seed': self.seed,
            'out': self.out,
            'regime': self.regime,
            'enumeration_cap': self.enumeration_cap,
            'workers': self.workers,
            'paired': self.paired,
            'noise': self.noise,
            'solver': self.solver,
        }
