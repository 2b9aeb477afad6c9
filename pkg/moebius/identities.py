"""
Point checks of the structural identities behind the proof.

Exact checks compare Fractions (or integers over a common denominator) and
hold only on equality. Certified checks hold when
|lhs - rhs| <= lhs.err + rhs.err + IDENTITY_TOLERANCE.
"""

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .conf import exact_cutoff, moebius_setting
from .exceptions import CutoffExceededError, DomainError
from .numeric import EPS, CertifiedFloat, fsum_certified
from .sieve import is_prime, moebius_oracle, moebius_table
from .summatory import exact_prefix_table, g_exact, summatory_table

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class IdentityCheck:
    name: str
    x: int
    lhs: object
    rhs: object
    holds: bool
    slack: float
    kind: str = 'certified'


@dataclass
class IdentityScan:
    name: str
    lo: int
    hi: int
    checked: int = 0
    failures: list = field(default_factory=list)
    failure_count: int = 0
    max_slack: float = 0.0

    @property
    def passed(self):
        return self.failure_count == 0

    def record(self, check):
        self.checked += 1
        self.max_slack = max(self.max_slack, check.slack)
        if not check.holds:
            self.failure_count += 1
            if len(self.failures) < moebius_setting('MAX_REPORTED_VIOLATIONS'):
                self.failures.append(check.x)


def _tolerance(tolerance):
    return moebius_setting('IDENTITY_TOLERANCE') if tolerance is None else tolerance


def _certified_check(name, x, lhs, rhs, tolerance=None):
    gap = abs(lhs.value - rhs.value)
    holds = gap <= lhs.err + rhs.err + _tolerance(tolerance)
    return IdentityCheck(name, x, lhs, rhs, holds, gap + lhs.err + rhs.err)


def _exact_check(name, x, lhs, rhs):
    holds = lhs == rhs
    slack = 0.0 if holds else float(abs(Fraction(lhs) - Fraction(rhs)))
    return IdentityCheck(name, x, lhs, rhs, holds, slack, kind='exact')


def _root(x):
    if x < 1:
        raise DomainError(f"Identity checks need x >= 1, got {x}")
    return math.floor(x)


def divisor_sum(t, mu=None):
    """sum of mu(n) over the divisors n of t, by enumerating divisor pairs."""
    t = int(t)
    if t < 1:
        raise DomainError(f"Divisor sums need t >= 1, got {t}")
    value = mu.__getitem__ if mu is not None else moebius_oracle
    total = 0
    d = 1
    while d * d <= t:
        if t % d == 0:
            total += int(value(d))
            if d * d != t:
                total += int(value(t // d))
        d += 1
    return total


def divisor_sum_scan(lo, hi):
    mu = moebius_table(hi)
    scan = IdentityScan('divisor_sum', lo, hi)
    for t in range(lo, hi + 1):
        expected = 1 if t == 1 else 0
        scan.record(_exact_check('divisor_sum', t, divisor_sum(t, mu), expected))
    return scan


def _gram_table(x, cutoff):
    limit = exact_cutoff(cutoff)
    if x > limit:
        raise CutoffExceededError(f"Gram identity is checked exactly only up to {limit}, got {x}")
    return exact_prefix_table(limit)


def gram_identity(x, cutoff=None):
    """sum_{nu <= x} g(x/nu) / nu, summed term by term over the denominator L**2."""
    n = _root(x)
    table = _gram_table(n, cutoff)
    denominator = table.denominator
    numerators = table.numerators
    total = 0
    for nu in range(1, n + 1):
        total += numerators[n // nu] * (denominator // nu)
    return _exact_check('gram_identity', n, Fraction(total, denominator * denominator), Fraction(1))


def gram_identity_scan(lo, hi, cutoff=None):
    """Gram's identity for every x in [lo, hi], grouping nu by shared quotient."""
    table = _gram_table(hi, cutoff)
    numerators, harmonic = table.numerators, table.harmonic
    target = table.denominator * table.denominator
    scan = IdentityScan('gram_identity', lo, hi)
    for x in range(max(lo, 1), hi + 1):
        total = 0
        nu = 1
        while nu <= x:
            q = x // nu
            last = x // q
            if numerators[q]:
                total += numerators[q] * (harmonic[last] - harmonic[nu - 1])
            nu = last + 1
        if total == target:
            scan.record(IdentityCheck('gram_identity', x, 1, 1, True, 0.0, kind='exact'))
        else:
            scan.record(_exact_check('gram_identity', x, Fraction(total, target), Fraction(1)))
    logger.info(f"Gram identity on [{lo}, {hi}]: {scan.failure_count} failures")
    return scan


def capital_f(p, x, cutoff=None, block_size=None):
    """F(p, x) = -sum_{i >= 1} g(x / p**i) / p**i, stopping once p**i > x."""
    if not is_prime(p):
        raise DomainError(f"{p} is not prime")
    if p > x:
        raise DomainError(f"F(p, x) needs p <= x, got p={p}, x={x}")
    n = math.floor(x)
    powers = []
    power = p
    while power <= n:
        powers.append(power)
        power *= p
    if n <= exact_cutoff(cutoff):
        total = sum((g_exact(n // power, cutoff) / power for power in powers), Fraction(0))
        return CertifiedFloat.from_rational(-total)
    table = summatory_table(n, block_size)
    total = CertifiedFloat(0.0)
    for power in powers:
        total = total + table.g(n // power) / power
    return -total


def _table_for(n, table, block_size):
    if table is not None and table.limit >= n:
        return table
    return summatory_table(max(n, 1), block_size)


def decomposition_check(x, table=None, tolerance=None, block_size=None):
    """f(x) = -h(x) - sum_p log p (g(x/p**2)/p**2 + g(x/p**3)/p**3 + ...)."""
    n = _root(x)
    table = _table_for(n, table, block_size)
    lhs = table.certified('f', n)
    rhs = -table.h(n) - table.tail(n)
    return _certified_check('decomposition', n, lhs, rhs, tolerance)


def _eps_g_terms(table, n):
    nu = np.arange(1, n + 1, dtype=np.int64)
    eps, eps_err = table.values['epsilon'][nu], table.errs['epsilon'][nu]
    g_here = table.values['g'][n // nu], table.errs['g'][n // nu]
    g_next = table.values['g'][n // (nu + 1)], table.errs['g'][n // (nu + 1)]
    return nu, (eps, eps_err), g_here, g_next


def abel_sums(n, table):
    """The two rearranged sums in eps(nu), each certified.

    first = sum_{nu <= n} eps(nu) (g(n/nu) - g(n/(nu+1)))
    second = sum_{nu < n} eps(nu) g(n/(nu+1)) / (nu+1)
    """
    nu, (eps, eps_err), (g0, g0_err), (g1, g1_err) = _eps_g_terms(table, n)

    diff = g0 - g1
    diff_err = g0_err + g1_err + EPS * np.abs(diff)
    first = eps * diff
    first_err = np.abs(eps) * diff_err + eps_err * np.abs(diff) + EPS * np.abs(first)

    weight = 1.0 / (nu[:-1] + 1)
    second = eps[:-1] * g1[:-1] * weight
    second_err = weight * (np.abs(eps[:-1]) * g1_err[:-1] + eps_err[:-1] * np.abs(g1[:-1])) + 3 * EPS * np.abs(second)

    return fsum_certified(first, first_err), fsum_certified(second, second_err)


def abel_rearrangement_check(x, table=None, tolerance=None, block_size=None):
    """h(x) - 1 against the rearranged sums, both in eps(nu)."""
    n = _root(x)
    table = _table_for(n, table, block_size)
    first, second = abel_sums(n, table)
    rhs = first + second
    lhs = table.h(n) - 1
    check = _certified_check('abel_rearrangement', n, lhs, rhs, tolerance)

    # g(x / ([x] + 1)) = 0 lets the boundary term of the rearrangement drop.
    boundary = g_exact(Fraction(n, n + 1)) == 0 and table.values['g'][n // (n + 1)] == 0
    if not boundary:
        logger.error(f"Boundary term g(x/([x]+1)) is non-zero at x={n}")
        return IdentityCheck(check.name, n, lhs, rhs, False, check.slack)
    return check


def epsilon_split_check(x, table=None, tolerance=None, block_size=None):
    """h(x) - 1 against sum (eps(nu) - eps(nu-1)) g(x/nu) + sum eps(nu-1) g(x/nu) / nu."""
    n = _root(x)
    table = _table_for(n, table, block_size)
    nu, (eps, eps_err), (g0, g0_err), _ = _eps_g_terms(table, n)
    eps_prev = table.values['epsilon'][nu - 1]
    eps_prev_err = table.errs['epsilon'][nu - 1]

    step = eps - eps_prev
    step_err = eps_err + eps_prev_err + EPS * np.abs(step)
    first = step * g0
    first_err = np.abs(step) * g0_err + step_err * np.abs(g0) + EPS * np.abs(first)

    weight = 1.0 / nu
    second = eps_prev * g0 * weight
    second_err = weight * (np.abs(eps_prev) * g0_err + eps_prev_err * np.abs(g0)) + 3 * EPS * np.abs(second)

    rhs = fsum_certified(np.concatenate([first, second]), np.concatenate([first_err, second_err]))
    return _certified_check('epsilon_split', n, table.h(n) - 1, rhs, tolerance)


def h_theta_form_check(x, table=None, tolerance=None, block_size=None):
    """h(x) against sum_{nu <= x} (theta(nu) - theta(nu-1)) / nu * g(x/nu)."""
    n = _root(x)
    table = _table_for(n, table, block_size)
    nu = np.arange(1, n + 1, dtype=np.int64)
    theta, theta_err = table.values['theta'], table.errs['theta']
    jump = theta[nu] - theta[nu - 1]
    jump_err = theta_err[nu] + theta_err[nu - 1] + EPS * np.abs(jump)
    g, g_err = table.values['g'][n // nu], table.errs['g'][n // nu]
    weight = 1.0 / nu
    terms = jump * weight * g
    term_errs = weight * (jump_err * np.abs(g) + np.abs(jump) * g_err) + 3 * EPS * np.abs(terms)
    return _certified_check('h_theta_form', n, table.h(n), fsum_certified(terms, term_errs), tolerance)


CERTIFIED_CHECKS = {
    'decomposition': decomposition_check,
    'abel_rearrangement': abel_rearrangement_check,
    'epsilon_split': epsilon_split_check,
    'h_theta_form': h_theta_form_check,
}


def scan_identity(name, lo, hi, tolerance=None, block_size=None):
    """Run one certified check at every integer of [lo, hi] over a shared table."""
    check = CERTIFIED_CHECKS[name]
    table = summatory_table(hi, block_size)
    scan = IdentityScan(name, lo, hi)
    for x in range(lo, hi + 1):
        scan.record(check(x, table=table, tolerance=tolerance))
    logger.info(f"{name} on [{lo}, {hi}]: {scan.failure_count} failures, max slack {scan.max_slack:.3e}")
    return scan
