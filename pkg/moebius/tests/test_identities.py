import math
from fractions import Fraction

from django.test import SimpleTestCase

from moebius.exceptions import CutoffExceededError, DomainError
from moebius.identities import (
    CERTIFIED_CHECKS,
    abel_rearrangement_check,
    capital_f,
    decomposition_check,
    divisor_sum,
    divisor_sum_scan,
    epsilon_split_check,
    gram_identity,
    gram_identity_scan,
    h_theta_form_check,
    scan_identity,
)
from moebius.summatory import g_exact


class DivisorSumTests(SimpleTestCase):
    def test_known_values(self):
        self.assertEqual(divisor_sum(1), 1)
        self.assertEqual(divisor_sum(12), 0)
        self.assertEqual(divisor_sum(7), 0)
        self.assertEqual(divisor_sum(36), 0)

    def test_exhaustive(self):
        scan = divisor_sum_scan(1, 10 ** 4)
        self.assertTrue(scan.passed)
        self.assertEqual(scan.checked, 10 ** 4)

    def test_rejects_zero(self):
        with self.assertRaises(DomainError):
            divisor_sum(0)


class GramIdentityTests(SimpleTestCase):
    def test_small_points(self):
        for x in (1, 2, 3, 10, 97):
            check = gram_identity(x)
            self.assertTrue(check.holds, x)
            self.assertEqual(check.lhs, 1)
            self.assertEqual(check.kind, 'exact')
            self.assertEqual(check.slack, 0.0)

    def test_matches_direct_rational_sum(self):
        x = 30
        direct = sum((g_exact(Fraction(x, nu)) / nu for nu in range(1, x + 1)), Fraction(0))
        self.assertEqual(direct, 1)
        self.assertTrue(gram_identity(x).holds)

    def test_scan(self):
        scan = gram_identity_scan(1, 2000)
        self.assertTrue(scan.passed)
        self.assertEqual(scan.checked, 2000)
        self.assertEqual(scan.failures, [])

    def test_above_cutoff(self):
        with self.assertRaises(CutoffExceededError):
            gram_identity(50, cutoff=10)
        with self.assertRaises(CutoffExceededError):
            gram_identity_scan(1, 50, cutoff=10)


class CapitalFTests(SimpleTestCase):
    def test_known_values(self):
        self.assertAlmostEqual(capital_f(2, 3).value, -0.5, places=15)
        self.assertAlmostEqual(capital_f(3, 3).value, -1 / 3, places=15)
        self.assertAlmostEqual(capital_f(2, 4).value, -0.5, places=15)

    def test_truncation(self):
        # The first omitted term has argument x / p**i < 1, where g vanishes.
        self.assertEqual(g_exact(Fraction(3, 4)), 0)
        self.assertEqual(capital_f(2, 3.5).value, capital_f(2, 3).value)

    def test_float_path_above_cutoff(self):
        exact = capital_f(3, 500)
        approx = capital_f(3, 500, cutoff=100)
        self.assertLessEqual(abs(exact.value - approx.value), exact.err + approx.err)

    def test_domain(self):
        with self.assertRaises(DomainError):
            capital_f(4, 10)
        with self.assertRaises(DomainError):
            capital_f(5, 3)


class DecompositionTests(SimpleTestCase):
    def test_known_values(self):
        check = decomposition_check(3)
        self.assertTrue(check.holds)
        self.assertAlmostEqual(check.lhs.value, -0.7127776, places=6)
        self.assertAlmostEqual(check.rhs.value, -(math.log(2) / 2 + math.log(3) / 3), places=14)

        check = decomposition_check(1)
        self.assertTrue(check.holds)
        self.assertEqual(check.lhs.value, 0.0)
        self.assertEqual(check.rhs.value, 0.0)

        check = decomposition_check(4)
        self.assertTrue(check.holds)
        self.assertAlmostEqual(check.lhs.value, -math.log(2) / 2 - math.log(3) / 3, places=14)


class AbelRearrangementTests(SimpleTestCase):
    def test_first_point(self):
        check = abel_rearrangement_check(1)
        self.assertTrue(check.holds)
        self.assertEqual(check.lhs.value, -1.0)
        self.assertEqual(check.rhs.value, -1.0)

    def test_small_points(self):
        check = abel_rearrangement_check(2)
        self.assertTrue(check.holds)
        self.assertAlmostEqual(check.lhs.value, math.log(2) / 2 - 1, places=14)
        check = abel_rearrangement_check(10)
        self.assertTrue(check.holds)
        self.assertLessEqual(check.slack, 1e-12)

    def test_before_rearrangement(self):
        for x in (1, 2, 10, 1000):
            self.assertTrue(epsilon_split_check(x).holds, x)
            self.assertTrue(h_theta_form_check(x).holds, x)


class ScanTests(SimpleTestCase):
    def test_certified_scans(self):
        for name in CERTIFIED_CHECKS:
            scan = scan_identity(name, 1, 2000)
            self.assertTrue(scan.passed, name)
            self.assertEqual(scan.checked, 2000)
            self.assertLessEqual(scan.max_slack, 1e-9, name)

    def test_tolerance_is_applied(self):
        scan = scan_identity('decomposition', 2, 50, tolerance=0.0)
        self.assertTrue(scan.passed)
