"""
Django command to run an experiment.
"""
from django.core.management.base import BaseCommand, CommandError

from core.exceptions import LsdError
from harness.experiment import load_config, run_experiment


class Command(BaseCommand):
    help = "Run the learners of an experiment and write trace.csv, curves.csv and summary.json."

    def add_arguments(self, parser):
        parser.add_argument('--config', help="JSON experiment configuration.")
        parser.add_argument('--instance', help="Instance file, or example:<name>.")
        parser.add_argument('--horizon', type=int)
        parser.add_argument('--block-size', type=int, dest='block_size')
        parser.add_argument('--alpha', type=float)
        parser.add_argument('--reps', type=int, dest='repetitions')
        parser.add_argument('--seed', type=int)
        parser.add_argument('--algos', help="Comma-separated, e.g. isi,combucb1,cs:4,3,2,1,0.")
        parser.add_argument('--out')
        parser.add_argument('--regime', choices=['constant_negative', 'general'])
        parser.add_argument('--workers', type=int)
        parser.add_argument('--solver', choices=['bnb', 'enumerate'])
        parser.add_argument('--paired', action='store_true', default=None)
        parser.add_argument('--no-noise', action='store_false', dest='noise', default=None)

    def handle(self, *args, **options):
        overrides = {
            key: options[key]
            for key in ('instance', 'horizon', 'block_size', 'alpha', 'repetitions', 'seed',
                        'out', 'regime', 'workers', 'solver', 'paired', 'noise')
        }
        if options['algos']:
            overrides['algorithms'] = split_algorithms(options['algos'])
        try:
            config = load_config(options['config'], **overrides)
            self.stdout.write(self.style.WARNING(
                    f"Running {', '.join(spec.label for spec in config.algorithms)} "
                    f"for {config.repetitions} repetitions..."
            ))
            result = run_experiment(config)
        except LsdError as error:
            raise CommandError(str(error)) from error

        for label, stats in result.summary['algorithms'].items():
            self.stdout.write(self.style.NOTICE(
                    f"{label}: mean cumulative reward {stats['final_mean']:.2f} "
                    f"(std {stats['final_std']:.2f}) over {stats['horizon']} steps"
            ))
        self.stdout.write(self.style.SUCCESS(f"Results written to {config.out}."))


def split_algorithms(text):
    """Split `isi,cs:4,3,2,1,0,combucb1` on the commas that separate algorithms."""
    algorithms = []
    for part in text.split(','):
        part = part.strip()
        if algorithms and algorithms[-1].startswith('cs:') and part.isdigit():
            algorithms[-1] += f',{part}'
        elif part:
            algorithms.append(part)
    return algorithms
