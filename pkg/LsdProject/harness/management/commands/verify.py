"""
Django command to run the property sweeps.
"""
from django.core.management.base import BaseCommand, CommandError

from core.exceptions import LsdError
from harness.properties import CHECKS, verify_properties


class Command(BaseCommand):
    help = "Run property checks and write report.json; fails if any check fails."

    def add_arguments(self, parser):
        parser.add_argument('--scope', action='append', choices=list(CHECKS),
                            help="Check to run; repeat for several. Defaults to all.")
        parser.add_argument('--none', action='store_true', help="Run no check.")
        parser.add_argument('--seed', type=int, default=0)
        parser.add_argument('--out', default='results')

    def handle(self, *args, **options):
        scopes = [] if options['none'] else options['scope'] or list(CHECKS)
        try:
            report = verify_properties(scopes, seed=options['seed'], out=options['out'])
        except LsdError as error:
            raise CommandError(str(error)) from error

        for scope, check in report['checks'].items():
            style = self.style.SUCCESS if check['passed'] else self.style.ERROR
            self.stdout.write(style(f"{scope}: {'passed' if check['passed'] else 'FAILED'}"))
        if not report['passed']:
            raise CommandError(f"Property checks failed; see {options['out']}/report.json.")
        self.stdout.write(self.style.SUCCESS("All property checks passed."))
