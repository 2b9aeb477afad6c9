import math
from fractions import Fraction

import numpy as np
from django.test import SimpleTestCase

from moebius.numeric import EPS, CertifiedFloat, CompensatedSum, RunningSum, fsum_certified


class CertifiedFloatTests(SimpleTestCase):
    def test_from_rational(self):
        third = CertifiedFloat.from_rational(Fraction(1, 3))
        self.assertTrue(third.contains(Fraction(1, 3)))
        self.assertGreater(third.err, 0)
        half = CertifiedFloat.from_rational(Fraction(1, 2))
        self.assertEqual(half.err, 0.0)

    def test_log_of_one_is_exact(self):
        self.assertEqual(CertifiedFloat.log(1), CertifiedFloat(0.0, 0.0))
        self.assertLessEqual(abs(CertifiedFloat.log(2).value - math.log(2)), CertifiedFloat.log(2).err)

    def test_arithmetic_keeps_enclosure(self):
        third = CertifiedFloat.from_rational(Fraction(1, 3))
        seventh = CertifiedFloat.from_rational(Fraction(1, 7))
        self.assertTrue((third + seventh).contains(Fraction(10, 21)))
        self.assertTrue((third - seventh).contains(Fraction(4, 21)))
        self.assertTrue((third * seventh).contains(Fraction(1, 21)))
        self.assertTrue((third / seventh).contains(Fraction(7, 3)))
        self.assertTrue((1 - third).contains(Fraction(2, 3)))

    def test_rejects_negative_error(self):
        with self.assertRaises(ValueError):
            CertifiedFloat(1.0, -1.0)

    def test_division_by_interval_around_zero(self):
        with self.assertRaises(ZeroDivisionError):
            CertifiedFloat(1.0) / CertifiedFloat(0.0, 1e-3)


class SummationTests(SimpleTestCase):
    def test_compensated_sum_recovers_lost_bits(self):
        acc = CompensatedSum()
        for value in (1e16, 1.0, -1e16):
            acc.add(value)
        self.assertEqual(acc.total, 1.0)

    def test_running_sum_error_model(self):
        running = RunningSum.empty()
        terms = np.array([1.0, -0.5, 1 / 3])
        running.add_terms(terms, exact_mask=np.array([True, True, False]))
        self.assertEqual(running.count, 3)
        self.assertAlmostEqual(running.term_err, EPS / 3)
        self.assertTrue(running.certified().contains(Fraction(5, 6)))

    def test_payload_roundtrip(self):
        running = RunningSum.empty()
        running.add_terms(np.array([0.1, 0.2, 0.3]))
        restored = RunningSum.from_payload(running.to_payload())
        self.assertEqual(restored.certified(), running.certified())

    def test_fsum_certified(self):
        total = fsum_certified([0.1] * 10, [EPS] * 10)
        self.assertEqual(total.value, 1.0)
        self.assertEqual(fsum_certified([], []), CertifiedFloat(0.0, 0.0))
