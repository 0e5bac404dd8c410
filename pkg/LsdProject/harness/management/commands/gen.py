"""
Django command to write instance files.
"""
from django.core.management.base import BaseCommand, CommandError
import numpy as np

from core.exceptions import LsdError
from harness.instances import (
    EXAMPLES,
    dump_instance,
    example_instance,
    pinwheel_instance,
    random_instance,
)


class Command(BaseCommand):
    help = "Write a pinwheel, random or named example instance."

    def add_arguments(self, parser):
        parser.add_argument('kind', choices=('pinwheel', 'random') + EXAMPLES)
        parser.add_argument('--out', required=True, help="Instance file to write.")
        parser.add_argument('--delays', help="Pinwheel delays, e.g. 2,4,4.")
        parser.add_argument('--no-dense-check', action='store_false', dest='dense_check')
        parser.add_argument('--epsilon', type=float, default=0.1)
        parser.add_argument('--arms', type=int, default=3)
        parser.add_argument('--tau-max', type=int, default=4, dest='tau_max')
        parser.add_argument('--seed', type=int, default=0)
        parser.add_argument('--general', action='store_true')

    def handle(self, *args, **options):
        kind = options['kind']
        try:
            if kind == 'pinwheel':
                if not options['delays']:
                    raise CommandError("pinwheel needs --delays.")
                delays = [int(delay) for delay in options['delays'].split(',')]
                table = pinwheel_instance(delays, dense_check=options['dense_check'])
            elif kind == 'random':
                rng = np.random.default_rng(options['seed'])
                table = random_instance(options['arms'], options['tau_max'], rng,
                                        constant_negative=not options['general'])
            else:
                table = example_instance(kind, epsilon=options['epsilon'], n_arms=options['arms'])
            dump_instance(table, options['out'])
        except ValueError as error:
            raise CommandError(f"Invalid parameters: {error}") from error
        except LsdError as error:
            raise CommandError(str(error)) from error
        self.stdout.write(self.style.SUCCESS(
                f"{kind} instance with {table.n_arms} arms written to {options['out']}."
        ))
