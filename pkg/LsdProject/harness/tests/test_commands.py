"""
Test custom Django commands.
"""
import json
import tempfile
from io import StringIO
from pathlib import Path
from unittest.mock import patch

from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase

from harness.instances import load_instance, pinwheel_instance, seasonal_instance
from harness.management.commands.run import split_algorithms


class CommandTestCase(SimpleTestCase):

    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.addCleanup(self.tmp.cleanup)
        self.dir = Path(self.tmp.name)

    def call(self, *args, **options):
        out = StringIO()
        call_command(*args, stdout=out, **options)
        return out.getvalue()


class GenCommandTests(CommandTestCase):
    """Test the gen command."""

    def test_pinwheel(self):
        path = self.dir / 'pinwheel.json'

        output = self.call('gen', 'pinwheel', '--delays', '2,4,4', '--out', str(path))

        self.assertIn('pinwheel instance with 4 arms', output)
        self.assertEqual(load_instance(path), pinwheel_instance([2, 4, 4]))

    def test_pinwheel_not_dense(self):
        with self.assertRaises(CommandError):
            self.call('gen', 'pinwheel', '--delays', '2,3', '--out', str(self.dir / 'x.json'))

    def test_pinwheel_bad_delays(self):
        with self.assertRaises(CommandError):
            self.call('gen', 'pinwheel', '--delays', '2,a', '--out', str(self.dir / 'x.json'))

    def test_example(self):
        path = self.dir / 'seasonal.json'

        self.call('gen', 'seasonal', '--out', str(path))

        self.assertEqual(load_instance(path), seasonal_instance())

    def test_random(self):
        """Test a seeded random instance is reproducible."""
        first, second = self.dir / 'a.json', self.dir / 'b.json'

        self.call('gen', 'random', '--arms', '4', '--tau-max', '3', '--seed', '7', '--out', str(first))
        self.call('gen', 'random', '--arms', '4', '--tau-max', '3', '--seed', '7', '--out', str(second))

        table = load_instance(first)
        self.assertEqual(table.n_arms, 4)
        self.assertEqual(table.tau_max, 3)
        self.assertEqual(table, load_instance(second))


class RunCommandTests(CommandTestCase):
    """Test the run command."""

    def test_run(self):
        out = self.dir / 'run'

        output = self.call('run', '--instance', 'example:satiation', '--block-size', '2',
                           '--horizon', '12', '--reps', '2', '--algos', 'isi,cs:1,0',
                           '--solver', 'enumerate', '--out', str(out))

        self.assertIn(f"Results written to {out}.", output)
        summary = json.loads((out / 'summary.json').read_text())
        self.assertEqual(set(summary['algorithms']), {'isi', 'cs:1,0'})
        self.assertTrue((out / 'trace.csv').exists())
        self.assertTrue((out / 'curves.csv').exists())

    def test_invalid_config(self):
        with self.assertRaises(CommandError):
            self.call('run', '--instance', 'example:satiation', '--block-size', '0')

    def test_missing_instance(self):
        with self.assertRaises(CommandError):
            self.call('run', '--instance', str(self.dir / 'missing.json'), '--block-size', '2',
                      '--horizon', '12', '--out', str(self.dir / 'run'))

    def test_split_algorithms(self):
        """Test calibration sequences keep their commas."""
        self.assertEqual(split_algorithms('isi, cs:4,3,2,1,0,combucb1'),
                         ['isi', 'cs:4,3,2,1,0', 'combucb1'])
        self.assertEqual(split_algorithms('cs:1,0,cs:0,1'), ['cs:1,0', 'cs:0,1'])


class VerifyCommandTests(CommandTestCase):
    """Test the verify command."""

    def test_none(self):
        output = self.call('verify', '--none', '--out', str(self.dir))

        self.assertIn('All property checks passed.', output)
        self.assertTrue((self.dir / 'report.json').exists())

    def test_scope(self):
        output = self.call('verify', '--scope', 'transition', '--scope', 'pinwheel',
                           '--out', str(self.dir))

        self.assertIn('transition: passed', output)
        self.assertIn('pinwheel: passed', output)

    @patch('harness.management.commands.verify.verify_properties')
    def test_failure(self, patched_verify):
        """Test a failed check fails the command."""
        patched_verify.return_value = {
            'passed': False,
            'checks': {'transition': {'passed': False}},
        }

        with self.assertRaises(CommandError):
            self.call('verify', '--scope', 'transition', '--out', str(self.dir))

        patched_verify.assert_called_once_with(['transition'], seed=0, out=str(self.dir))
