import csv
import io
import os
import tempfile

from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase, override_settings

from moebius.serializers import ErrorBoundField, RunConfigSerializer, SignificantFloatField


def run_command(*args):
    out = io.StringIO()
    call_command('moebius', *args, stdout=out)
    return out.getvalue()


def rows(text):
    return list(csv.reader(io.StringIO(text)))


class TableCommandTests(SimpleTestCase):
    def test_small_table(self):
        text = run_command('table', '--limit', '6')
        lines = rows(text)
        self.assertEqual(len(lines), 7)
        self.assertEqual(lines[0], ['x', 'g', 'g_err', 'f', 'f_err', 'M', 'theta', 'theta_err', 'epsilon', 'h', 'h_err'])
        last = dict(zip(lines[0], lines[-1]))
        self.assertEqual(last['x'], '6')
        self.assertEqual(last['M'], '-1')
        self.assertEqual(float(last['g']), 2 / 15)
        first = dict(zip(lines[0], lines[1]))
        self.assertEqual((first['g'], first['g_err'], first['epsilon']), ('1', '0.00e+00', '-1'))

    def test_out_file_matches_stdout(self):
        expected = run_command('table', '--limit', '50', '--stride', '7')
        with tempfile.TemporaryDirectory() as directory:
            path = os.path.join(directory, 'table.csv')
            self.assertEqual(run_command('table', '--limit', '50', '--stride', '7', '--out', path), '')
            with open(path, encoding='utf-8') as handle:
                self.assertEqual(handle.read(), expected)


class VerifyCommandTests(SimpleTestCase):
    def test_all_checks_pass(self):
        lines = rows(run_command('verify', '--limit', '200'))
        header, body = lines[0], lines[1:]
        self.assertEqual(header, ['check', 'lo', 'hi', 'passed', 'checked', 'failures', 'max_value'])
        self.assertGreater(len(body), 10)
        for row in body:
            self.assertEqual(row[3], 'true', row)
            self.assertEqual(row[5], '0', row)

    def test_output_is_deterministic(self):
        self.assertEqual(run_command('verify', '--limit', '300'), run_command('verify', '--limit', '300'))

    @override_settings(MOEBIUS={'POINTWISE_SCAN_LIMIT': 100, 'RECURSION_SCAN_LIMIT': 50, 'RECURSION_SAMPLES': 5})
    def test_per_point_scans_stop_at_their_ceiling(self):
        lines = rows(run_command('verify', '--limit', '300'))
        by_name = {row[0]: dict(zip(lines[0], row)) for row in lines[1:]}
        self.assertEqual(by_name['tail_bound']['hi'], '100')
        self.assertEqual(by_name['variation_bound']['hi'], '100')
        self.assertEqual(by_name['g_bound']['hi'], '300')
        recursion = by_name['mertens_recursion']
        self.assertEqual((recursion['hi'], recursion['passed']), ('300', 'true'))
        self.assertLessEqual(int(recursion['checked']), 55)
        self.assertGreater(int(recursion['checked']), 50)


class ConvergeCommandTests(SimpleTestCase):
    def test_footer(self):
        text = run_command('converge', '--limit', '1000', '--delta', '1.0', '--stride', '10')
        lines = text.splitlines()
        self.assertEqual(lines[0], 'x,ratio_h,ratio_M')
        self.assertEqual(len(lines), 102)
        self.assertRegex(lines[-1], r'^G=(\d+|none),xi_h=(\d+|none),xi_M=(\d+|none)$')

    def test_requires_delta(self):
        with self.assertRaises(CommandError) as context:
            run_command('converge', '--limit', '1000')
        self.assertEqual(context.exception.returncode, 2)


class FastCommandTests(SimpleTestCase):
    def test_single_row(self):
        lines = rows(run_command('fast', '--limit', '1000'))
        self.assertEqual(len(lines), 2)
        row = dict(zip(lines[0], lines[1]))
        self.assertEqual(row['x'], '1000')
        self.assertEqual(row['M'], '2')


class BenchCommandTests(SimpleTestCase):
    def test_rows(self):
        lines = rows(run_command('bench', '--limit', '1000'))
        self.assertEqual(lines[0], ['benchmark', 'parameter', 'seconds'])
        self.assertEqual({row[0] for row in lines[1:]}, {'sieve_blocksize', 'm_recursive_crossover'})
        self.assertTrue(all(float(row[2]) >= 0 for row in lines[1:]))


class UsageErrorTests(SimpleTestCase):
    def test_rejects_zero_limit(self):
        with self.assertRaises(CommandError) as context:
            run_command('table', '--limit', '0')
        self.assertEqual(context.exception.returncode, 2)

    def test_unwritable_output(self):
        with tempfile.TemporaryDirectory() as directory:
            path = os.path.join(directory, 'missing', 'table.csv')
            with self.assertRaises(CommandError) as context:
                run_command('table', '--limit', '10', '--out', path)
        self.assertEqual(context.exception.returncode, 2)

    def test_crossover_beyond_limit_is_clamped(self):
        lines = rows(run_command('fast', '--limit', '100', '--crossover', '500'))
        self.assertEqual(dict(zip(lines[0], lines[1]))['crossover'], '100')


class RunConfigTests(SimpleTestCase):
    def test_default_strides(self):
        for subcommand, limit, stride in (('table', 50, 1), ('converge', 10 ** 5, 100), ('fast', 77, 77)):
            data = {'subcommand': subcommand, 'limit': limit, 'delta': 0.5}
            serializer = RunConfigSerializer(data=data)
            self.assertTrue(serializer.is_valid(), serializer.errors)
            self.assertEqual(serializer.save().stride, stride)

    def test_rejects_non_positive_delta(self):
        serializer = RunConfigSerializer(data={'subcommand': 'converge', 'limit': 10, 'delta': -1})
        self.assertFalse(serializer.is_valid())
        self.assertIn('delta', serializer.errors)


class FieldTests(SimpleTestCase):
    def test_error_bound_rounds_up(self):
        field = ErrorBoundField()
        self.assertEqual(field.to_representation(2.0 ** -53), '1.12e-16')
        self.assertEqual(field.to_representation(0.0), '0.00e+00')
        self.assertEqual(field.to_representation(0.5), '5.00e-01')
        self.assertEqual(field.to_representation(9.999), '1.00e+01')

    def test_significant_float(self):
        field = SignificantFloatField()
        self.assertEqual(field.to_representation(0.1), '0.10000000000000001')
        self.assertEqual(field.to_representation(-1.0), '-1')
