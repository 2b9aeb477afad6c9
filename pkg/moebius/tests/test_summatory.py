import math
from fractions import Fraction

import numpy as np
from django.test import SimpleTestCase

from moebius.exceptions import DomainError
from moebius.summatory import (
    ExactPrefixTable,
    PrefixState,
    big_m,
    block_totals,
    epsilon,
    f_value,
    g_exact,
    g_float,
    h_direct,
    harmonic,
    series_scan,
    squarefree_harmonic,
    summatory_table,
    theta,
)

THETA_10 = 5.347107530717468


class WeightedSumTests(SimpleTestCase):
    def test_g_exact(self):
        self.assertEqual(g_exact(1), 1)
        self.assertEqual(g_exact(0.7), 0)
        self.assertEqual(g_exact(3), Fraction(1, 6))
        self.assertEqual(g_exact(6), Fraction(2, 15))

    def test_g_float(self):
        self.assertTrue(g_float(2).contains(Fraction(1, 2)))
        self.assertEqual(g_float(0), g_float(0.5))
        self.assertEqual(g_float(0).err, 0.0)
        self.assertTrue(g_float(4).contains(Fraction(1, 6)))

    def test_g_float_encloses_exact_value(self):
        for x in range(1, 3000, 37):
            self.assertTrue(g_float(x).contains(g_exact(x)), x)

    def test_g_float_block_size_does_not_move_the_enclosure(self):
        small = g_float(5000, block_size=97)
        self.assertTrue(small.contains(g_exact(5000)))

    def test_f_value(self):
        self.assertEqual(f_value(1).value, 0.0)
        self.assertEqual(f_value(1.9).value, 0.0)
        self.assertAlmostEqual(f_value(2).value, -math.log(2) / 2, places=15)
        self.assertAlmostEqual(f_value(3).value, -(math.log(2) / 2 + math.log(3) / 3), places=14)
        with self.assertRaises(DomainError):
            f_value(0.5)

    def test_harmonic_sums(self):
        self.assertEqual(harmonic(1), harmonic(1.5))
        self.assertEqual(harmonic(1).value, 1.0)
        self.assertEqual(harmonic(1).err, 0.0)
        self.assertTrue(harmonic(2).contains(Fraction(3, 2)))
        self.assertTrue(harmonic(4).contains(Fraction(25, 12)))
        self.assertTrue(squarefree_harmonic(4).contains(Fraction(11, 6)))


class MertensTests(SimpleTestCase):
    def test_small_values(self):
        self.assertEqual(big_m(1), 1)
        self.assertEqual(big_m(5), -2)
        self.assertEqual(big_m(6), -1)
        self.assertEqual(big_m(0), 0)

    def test_regression_values(self):
        self.assertEqual(big_m(10 ** 3), 2)
        self.assertEqual(big_m(10 ** 4, block_size=1000), -23)
        self.assertEqual(big_m(10 ** 5), -48)
        self.assertEqual(big_m(10 ** 6), 212)


class ThetaTests(SimpleTestCase):
    def test_theta(self):
        self.assertEqual(theta(1).value, 0.0)
        self.assertAlmostEqual(theta(2).value, math.log(2), places=15)
        self.assertAlmostEqual(theta(10).value, THETA_10, places=12)
        self.assertLessEqual(abs(theta(10).value - THETA_10), theta(10).err + 1e-15)

    def test_epsilon(self):
        self.assertEqual(epsilon(0), epsilon(0.0))
        self.assertEqual(epsilon(0).value, 0.0)
        self.assertEqual(epsilon(1).value, -1.0)
        self.assertAlmostEqual(epsilon(10).value, THETA_10 / 10 - 1, places=12)

    def test_epsilon_shrinks(self):
        self.assertLess(abs(epsilon(10 ** 6).value), abs(epsilon(10 ** 3).value))
        self.assertLess(abs(epsilon(10 ** 6).value), 0.01)
        self.assertLess(abs(g_float(10 ** 6).value), 0.01)
        self.assertLess(abs(big_m(10 ** 6)) / 10 ** 6, abs(big_m(10 ** 3)) / 10 ** 3)

    def test_g_and_h_shrink(self):
        table = summatory_table(10 ** 6)
        self.assertLess(abs(table.g(10 ** 6).value), abs(table.g(10 ** 3).value))
        ratios = [abs(table.h(x).value) / math.log(x) for x in (10 ** 3, 10 ** 4, 10 ** 5, 10 ** 6)]
        self.assertLess(ratios[-1], ratios[0])
        self.assertAlmostEqual(ratios[0], 0.1363094, places=6)
        self.assertAlmostEqual(ratios[-1], 0.0721281, places=6)


class HTests(SimpleTestCase):
    def test_h_direct(self):
        self.assertEqual(h_direct(1).value, 0.0)
        self.assertAlmostEqual(h_direct(2).value, math.log(2) / 2, places=15)
        self.assertAlmostEqual(h_direct(3).value, math.log(2) / 2 + math.log(3) / 3, places=15)
        with self.assertRaises(DomainError):
            h_direct(0.5)

    def test_exact_and_table_paths_agree(self):
        table = summatory_table(5000)
        for x in (17, 500, 4999):
            exact_inner = h_direct(x)
            from_table = table.h(x)
            self.assertLessEqual(abs(exact_inner.value - from_table.value), exact_inner.err + from_table.err)
        above_cutoff = h_direct(1000, cutoff=100)
        self.assertLessEqual(abs(above_cutoff.value - table.h(1000).value), above_cutoff.err + table.h(1000).err)


class TableTests(SimpleTestCase):
    def test_table_matches_streaming_sums(self):
        table = summatory_table(5000)
        for x in (1, 2, 97, 1000, 5000):
            self.assertEqual(int(table.m[x]), big_m(x))
            for key, stream in (('g', g_float), ('theta', theta)):
                a, b = table.certified(key, x), stream(x)
                self.assertLessEqual(abs(a.value - b.value), a.err + b.err, (key, x))

    def test_theta_and_harmonic_are_monotone(self):
        table = summatory_table(10 ** 5)
        self.assertTrue(np.all(np.diff(table.values['theta']) >= 0))
        self.assertTrue(np.all(np.diff(table.values['harmonic']) > 0))

    def test_zero_index_is_empty(self):
        table = summatory_table(100)
        self.assertEqual(table.g(0), g_float(0))
        self.assertEqual(int(table.m[0]), 0)
        self.assertEqual(table.tail(3).value, 0.0)

    def test_prime_powers(self):
        powers, logs, _ = summatory_table(100).prime_powers
        self.assertEqual(powers.tolist(), [4, 8, 9, 16, 25, 27, 32, 49, 64, 81])
        self.assertAlmostEqual(logs[2], math.log(3))

    def test_exact_prefix_table(self):
        table = ExactPrefixTable(6)
        self.assertEqual(table.denominator, 60)
        self.assertEqual(table.g(6), Fraction(2, 15))
        self.assertEqual(table.harmonic_span(2, 4), Fraction(13, 12))


class BlockTotalsTests(SimpleTestCase):
    def test_totals_merge_in_order(self):
        state = PrefixState()
        state.merge(block_totals(1, 500))
        state.merge(PrefixState.from_payload(block_totals(501, 1000).to_payload()))
        self.assertEqual(state.x, 1000)
        self.assertEqual(state.m, 2)
        self.assertTrue(state.certified('g').contains(g_exact(1000)))


class SeriesTests(SimpleTestCase):
    def test_stride_one(self):
        series = series_scan(6, 1)
        self.assertEqual(len(series), 6)
        record = series.at(6)
        self.assertEqual(record.m, -1)
        self.assertTrue(record.g.contains(Fraction(2, 15)))

    def test_single_record(self):
        (record,) = series_scan(1, 1)
        self.assertEqual((record.x, record.m, record.g.value, record.theta.value), (1, 1, 1.0, 0.0))
        self.assertEqual(record.epsilon.value, -1.0)

    def test_stride(self):
        series = series_scan(10, 5)
        self.assertEqual([record.x for record in series], [5, 10])
        self.assertAlmostEqual(series.at(10).theta.value, THETA_10, places=12)
        with self.assertRaises(KeyError):
            series.at(7)

    def test_rejects_zero_stride(self):
        with self.assertRaises(DomainError):
            series_scan(10, 0)
