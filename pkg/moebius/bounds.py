"""
Range scans of the inequalities used in the proof and the empirical
thresholds G and xi.

A certified comparison lhs <= rhs passes when lhs.upper <= rhs.lower and is a
violation when lhs.lower > rhs.upper; anything in between is indeterminate
and fails the scan as well. Thresholds are empirical up to ``scan_limit``.
"""

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import accumulate

import mpmath
import numpy as np
from celery import group

from .conf import exact_cutoff, moebius_setting
from .exceptions import CutoffExceededError, DomainError
from .identities import IdentityCheck, IdentityScan, _exact_check, abel_sums
from .numeric import EPS, CertifiedFloat, fsum_certified
from .sieve import iter_blocks
from .summatory import PrefixState, exact_prefix_table, scan_blocks, summatory_table

logger = logging.getLogger(__name__)

GAMMA_NOTE = 'EULER_GAMMA setting, checked against H(n) - log n summed term by term'


@dataclass(frozen=True)
class Violation:
    x: int
    lhs: float
    rhs: float
    indeterminate: bool = False


@dataclass
class BoundReport:
    name: str
    lo: int
    hi: int
    violations: list = field(default_factory=list)
    violation_count: int = 0
    checked: int = 0
    max_ratio: float = 0.0
    gamma: float = None
    gamma_note: str = ''

    @property
    def range(self):
        return self.lo, self.hi

    @property
    def passed(self):
        return self.violation_count == 0

    def record(self, violation):
        self.violation_count += 1
        if len(self.violations) < moebius_setting('MAX_REPORTED_VIOLATIONS'):
            self.violations.append(violation)

    def merge(self, other):
        self.lo = min(self.lo, other.lo)
        self.hi = max(self.hi, other.hi)
        self.checked += other.checked
        self.max_ratio = max(self.max_ratio, other.max_ratio)
        for violation in other.violations:
            self.record(violation)
        self.violation_count += other.violation_count - len(other.violations)

    def to_payload(self):
        return {
            'name': self.name,
            'lo': self.lo,
            'hi': self.hi,
            'violations': [[v.x, v.lhs, v.rhs, v.indeterminate] for v in self.violations],
            'violation_count': self.violation_count,
            'checked': self.checked,
            'max_ratio': self.max_ratio,
        }

    @classmethod
    def from_payload(cls, payload):
        return cls(
            name=payload['name'],
            lo=int(payload['lo']),
            hi=int(payload['hi']),
            violations=[Violation(int(x), float(lhs), float(rhs), bool(flag))
                        for x, lhs, rhs, flag in payload['violations']],
            violation_count=int(payload['violation_count']),
            checked=int(payload['checked']),
            max_ratio=float(payload['max_ratio']),
        )


@dataclass
class ConvergenceReport:
    name: str
    delta: float
    scan_limit: int
    G: int = None
    xi: int = None
    samples: list = field(default_factory=list)
    checks: list = field(default_factory=list)
    threshold: float = None
    empirical: str = ''

    @property
    def passed(self):
        return all(check.passed for check in self.checks)


@dataclass(frozen=True)
class Condition:
    """Vectorised lhs <= rhs (or lhs < rhs when strict) with certified errors."""

    lhs: np.ndarray
    lhs_err: np.ndarray
    rhs: np.ndarray
    rhs_err: np.ndarray
    strict: bool = False

    def verdicts(self):
        upper = self.lhs + self.lhs_err
        lower = self.lhs - self.lhs_err
        rhs_lower = self.rhs - self.rhs_err
        rhs_upper = self.rhs + self.rhs_err
        if self.strict:
            return upper < rhs_lower, lower >= rhs_upper
        return upper <= rhs_lower, lower > rhs_upper


def _report_conditions(report, numbers, conditions, failed=None):
    """Record failures of every condition; max_ratio is taken from the first.

    ``failed`` marks points already known to violate, decided elsewhere.
    """
    numbers = np.asarray(numbers)
    definite = np.zeros(len(numbers), dtype=bool) if failed is None else failed.copy()
    failed = definite.copy()
    for condition in conditions:
        passes, violates = condition.verdicts()
        failed |= ~passes
        definite |= violates
    head = conditions[0]
    positive = head.rhs > 0
    if positive.any():
        ratios = np.abs(head.lhs[positive]) / head.rhs[positive]
        report.max_ratio = max(report.max_ratio, float(ratios.max()))
    report.checked += len(numbers)
    for i in np.nonzero(failed)[0].tolist():
        violation = Violation(int(numbers[i]), float(head.lhs[i]), float(head.rhs[i]), not bool(definite[i]))
        if violation.indeterminate:
            logger.warning(f"{report.name}: indeterminate comparison at x={violation.x}")
        report.record(violation)
    return report


def _compare(lhs, rhs, strict=False):
    return Condition(
        np.array([lhs.value]), np.array([lhs.err]),
        np.array([rhs.value]), np.array([rhs.err]),
        strict,
    )


def _log_arrays(numbers):
    log_x = np.log(numbers.astype(np.float64))
    return log_x, 2 * EPS * np.abs(log_x)


@lru_cache(maxsize=4)
def _exact_g_magnitudes(cutoff):
    table = exact_prefix_table(cutoff)
    return np.array([float(Fraction(abs(a), table.denominator)) for a in table.numerators])


def _g_bound(scan, params):
    g, g_err = np.abs(scan.values['g']), scan.errs['g'].copy()
    cutoff = params['cutoff']
    exact = scan.numbers <= cutoff
    if exact.any():
        g[exact] = _exact_g_magnitudes(cutoff)[scan.numbers[exact]]
        g_err[exact] = 0.0
    ones = np.ones_like(g)
    return [Condition(g, g_err, ones, np.zeros_like(g))]


def _mangoldt_bound(scan, params):
    log_x, log_err = _log_arrays(scan.numbers)
    g, g_err = scan.values['g'], scan.errs['g']
    f, f_err = scan.values['f'], scan.errs['f']
    product = log_x * g
    product_err = np.abs(log_x) * g_err + log_err * np.abs(g) + EPS * np.abs(product)
    diff = product - f
    diff_err = product_err + f_err + EPS * np.abs(diff)
    limit = 3.0 + params['gamma']
    rhs = np.full_like(diff, limit)
    return [Condition(np.abs(diff), diff_err, rhs, np.full_like(diff, EPS * limit))]


def _theta_bounds(scan, params):
    theta, theta_err = scan.values['theta'], scan.errs['theta']
    twice = 2.0 * scan.numbers.astype(np.float64)
    zeros = np.zeros_like(theta)
    return [
        Condition(theta, theta_err, twice, zeros, strict=True),
        Condition(-theta, theta_err, zeros, zeros),
    ]


def _harmonic_bound(scan, params):
    log_x, log_err = _log_arrays(scan.numbers)
    rhs = log_x + 1.0
    rhs_err = log_err + np.where(log_x == 0, 0.0, EPS * rhs)
    return [Condition(scan.values['harmonic'], scan.errs['harmonic'], rhs, rhs_err)]


BLOCK_BOUNDS = {
    'g_bound': _g_bound,
    'mangoldt_bound': _mangoldt_bound,
    'theta_bounds': _theta_bounds,
    'harmonic_bound': _harmonic_bound,
}


def _params(cutoff=None, gamma=None):
    return {
        'cutoff': exact_cutoff(cutoff),
        'gamma': moebius_setting('EULER_GAMMA') if gamma is None else float(gamma),
    }


def evaluate_block_bound(name, lo, hi, start, params, block_size=None):
    """Partial report for one bound over [lo, hi], starting from the state at lo - 1."""
    evaluate = BLOCK_BOUNDS[name]
    report = BoundReport(name, lo, hi)
    for scan in scan_blocks(lo, hi, start=start, block_size=block_size):
        _report_conditions(report, scan.numbers, evaluate(scan, params))
    return report


def _chunks(lo, hi):
    chunk = int(moebius_setting('SCAN_CHUNK'))
    head = list(iter_blocks(1, lo - 1, chunk)) if lo > 1 else []
    return head, list(iter_blocks(lo, hi, chunk))


def _gather(signatures):
    if not signatures:
        return []
    return group(signatures).apply_async().get()


def scan_bound(name, lo, hi, cutoff=None, gamma=None, block_size=None):
    """Scan one block-local bound over [lo, hi], chunked through Celery.

    Chunk totals are reduced in ascending order into start states, then the
    partial reports are merged in ascending order.
    """
    from .tasks import block_totals, scan_bound_block

    if lo < 1 or hi < lo:
        raise DomainError(f"Bound scans need 1 <= lo <= hi, got [{lo}, {hi}]")
    head, body = _chunks(lo, hi)
    prefix = head + body[:-1]
    totals = _gather([block_totals.s(a, b, block_size) for a, b in prefix])

    state = PrefixState()
    starts = []
    for i, (a, b) in enumerate(prefix):
        if a >= lo:
            starts.append(state.to_payload())
        state.merge(PrefixState.from_payload(totals[i]))
    starts.append(state.to_payload())

    params = _params(cutoff, gamma)
    partials = _gather([
        scan_bound_block.s(name, a, b, start, params, block_size)
        for (a, b), start in zip(body, starts)
    ])
    report = BoundReport(name, lo, hi, gamma=params['gamma'], gamma_note=GAMMA_NOTE)
    for payload in partials:
        report.merge(BoundReport.from_payload(payload))
    _log_report(report)
    return report


def _log_report(report):
    if report.passed:
        logger.info(f"{report.name} on [{report.lo}, {report.hi}] passed, max ratio {report.max_ratio:.6f}")
    else:
        logger.error(f"{report.name} on [{report.lo}, {report.hi}] failed at {report.violation_count} points")


def check_g_bound(lo, hi, cutoff=None, block_size=None):
    """|g(x)| <= 1, exact below the cutoff."""
    return scan_bound('g_bound', lo, hi, cutoff=cutoff, block_size=block_size)


def check_mangoldt_bound(lo, hi, gamma=None, block_size=None):
    """|log x * g(x) - f(x)| <= 3 + gamma."""
    return scan_bound('mangoldt_bound', lo, hi, gamma=gamma, block_size=block_size)


def check_theta_bounds(lo, hi, block_size=None):
    """0 <= theta(x) < 2x, i.e. -1 <= eps(x) < 1."""
    return scan_bound('theta_bounds', lo, hi, block_size=block_size)


def check_harmonic_bound(lo, hi, block_size=None):
    return scan_bound('harmonic_bound', lo, hi, block_size=block_size)


def _direct_log_sum(n):
    nu = np.arange(2, n + 1, dtype=np.float64)
    terms = np.log(nu) / (nu * nu)
    return fsum_certified(terms, 4 * EPS * terms)


@lru_cache(maxsize=2)
def tail_constant(accuracy=None):
    """C = sum_{nu >= 1} log(nu) / nu**2, certified to ``accuracy``.

    The direct sum runs to N; log t / t**2 decreases past sqrt(e), so the
    remainder lies between the integrals from N + 1 and from N.
    """
    accuracy = accuracy or moebius_setting('TAIL_CONSTANT_ACCURACY')
    n = 1000
    while True:
        upper = (math.log(n) + 1) / n
        lower = (math.log(n + 1) + 1) / (n + 1)
        if upper - lower <= accuracy / 2:
            break
        n = int(n * 1.25)
    direct = _direct_log_sum(n)
    remainder = CertifiedFloat((upper + lower) / 2, (upper - lower) / 2 + EPS * upper)
    constant = direct + remainder
    logger.debug(f"Tail constant {constant} from {n} terms")
    return constant


def euler_gamma_oracle(n=10 ** 4, dps=30):
    """gamma from H(n) - log n with Euler-Maclaurin corrections.

    H(n) is summed term by term, never through mpmath.harmonic.
    """
    with mpmath.workdps(dps):
        harmonic_sum = mpmath.fsum(1 / mpmath.mpf(k) for k in range(1, n + 1))
        n = mpmath.mpf(n)
        value = harmonic_sum - mpmath.log(n)
        value -= 1 / (2 * n)
        value += 1 / (12 * n ** 2)
        value -= 1 / (120 * n ** 4)
        value += 1 / (252 * n ** 6)
        return float(value)


def check_euler_gamma(tolerance=1e-12):
    """The EULER_GAMMA setting against the harmonic oracle; ratio is |difference| / tolerance."""
    gamma = moebius_setting('EULER_GAMMA')
    difference = abs(gamma - euler_gamma_oracle())
    report = BoundReport('euler_gamma', 1, 1, checked=1, max_ratio=difference / tolerance,
                         gamma=gamma, gamma_note=GAMMA_NOTE)
    if difference > tolerance:
        report.record(Violation(1, difference, tolerance))
    _log_report(report)
    return report


def check_tail_constant(dps=30):
    """tail_constant() must contain -zeta'(2) computed by mpmath."""
    constant = tail_constant()
    with mpmath.workdps(dps):
        reference = -mpmath.zeta(2, derivative=1)
        difference = float(abs(mpmath.mpf(constant.value) - reference))
    slack = constant.err + EPS * constant.value
    report = BoundReport('tail_constant', 1, 1, checked=1, max_ratio=difference / slack)
    if difference > slack:
        report.record(Violation(1, difference, slack))
    _log_report(report)
    return report


def check_tail_bound(x, block_size=None):
    """|sum_p log p sum_{i >= 2} g(x/p**i) / p**i| <= 2C."""
    return check_tail_bound_range(x, x, block_size)


def check_tail_bound_range(lo, hi, block_size=None):
    if lo < 1 or hi < lo:
        raise DomainError(f"Bound scans need 1 <= lo <= hi, got [{lo}, {hi}]")
    table = summatory_table(hi, block_size)
    rhs = tail_constant() * 2
    report = BoundReport('tail_bound', lo, hi)
    lhs = [abs(table.tail(x)) for x in range(lo, hi + 1)]
    condition = Condition(
        np.array([t.value for t in lhs]), np.array([t.err for t in lhs]),
        np.full(len(lhs), rhs.value), np.full(len(lhs), rhs.err),
    )
    _report_conditions(report, np.arange(lo, hi + 1), [condition])
    _log_report(report)
    return report


def _distinct_quotients(x):
    root = math.isqrt(x)
    small = np.arange(1, root + 1, dtype=np.int64)
    return np.unique(np.concatenate([small, x // small]))


def variation_sum(x, table):
    """(V(x), largest single |g(x/nu) - g(x/(nu+1))|), both certified.

    Only the last nu of each quotient run contributes, so the sum runs over
    the distinct quotients q with the next argument x // (x // q + 1).
    """
    q = _distinct_quotients(x)
    following = x // (x // q + 1)
    g, g_err = table.values['g'], table.errs['g']
    diff = np.abs(g[q] - g[following])
    diff_err = g_err[q] + g_err[following] + EPS * diff
    i = int(np.argmax(diff + diff_err))
    return fsum_certified(diff, diff_err), CertifiedFloat(float(diff[i]), float(diff_err[i]))


def _exact_variation(x, table):
    """(L * V(x), L * largest single step) in integers."""
    numerators = table.numerators
    total = largest = 0
    for q in _distinct_quotients(x).tolist():
        step = abs(numerators[q] - numerators[x // (x // q + 1)])
        total += step
        largest = max(largest, step)
    return total, largest


def check_variation_bound(lo, hi, cutoff=None, block_size=None):
    """V(x) <= sum |mu(k)|/k <= H(x) <= log x + 1 and every single step <= 2.

    The first links are equalities at small x, so up to the cutoff they are
    compared exactly over the common denominator.
    """
    if lo < 1 or hi < lo:
        raise DomainError(f"Bound scans need 1 <= lo <= hi, got [{lo}, {hi}]")
    table = summatory_table(hi, block_size)
    limit = exact_cutoff(cutoff)
    report = BoundReport('variation_bound', lo, hi)

    if lo <= limit:
        exact = exact_prefix_table(limit)
        denominator = exact.denominator
        numbers = np.arange(lo, min(hi, limit) + 1, dtype=np.int64)
        variation, chain = [], []
        for x in numbers.tolist():
            total, largest = _exact_variation(x, exact)
            variation.append(total / denominator)
            chain.append(total <= exact.squarefree[x] <= exact.harmonic[x] and largest <= 2 * denominator)
        variation = np.array(variation)
        log_x, log_err = _log_arrays(numbers)
        ceiling = log_x + 1.0
        ceiling_err = log_err + np.where(log_x == 0, 0.0, EPS * ceiling)
        _report_conditions(report, numbers, [
            Condition(variation, EPS * variation * (numbers > 1), ceiling, ceiling_err),
            Condition(table.values['harmonic'][numbers], table.errs['harmonic'][numbers], ceiling, ceiling_err),
        ], failed=~np.array(chain))

    if hi > limit:
        numbers = np.arange(max(lo, limit + 1), hi + 1, dtype=np.int64)
        sums = [variation_sum(x, table) for x in numbers.tolist()]
        variation = np.array([v.value for v, _ in sums])
        variation_err = np.array([v.err for v, _ in sums])
        step = np.array([s.value for _, s in sums])
        step_err = np.array([s.err for _, s in sums])
        squarefree = table.values['squarefree'][numbers], table.errs['squarefree'][numbers]
        harmonic = table.values['harmonic'][numbers], table.errs['harmonic'][numbers]
        log_x, log_err = _log_arrays(numbers)
        ceiling = log_x + 1.0
        ceiling_err = log_err + EPS * ceiling
        _report_conditions(report, numbers, [
            Condition(variation, variation_err, ceiling, ceiling_err),
            Condition(variation, variation_err, *squarefree),
            Condition(*squarefree, *harmonic),
            Condition(*harmonic, ceiling, ceiling_err),
            Condition(step, step_err, np.full(len(numbers), 2.0), np.zeros(len(numbers))),
        ])
    _log_report(report)
    return report



def _require_delta(delta, scan_limit):
    if delta <= 0:
        raise DomainError(f"delta must be positive, got {delta}")
    if scan_limit < 2:
        raise DomainError(f"scan_limit must be at least 2, got {scan_limit}")


def _last_good_suffix(upper, threshold):
    """Least index G >= 1 with upper[G:] <= threshold, or None if upper[-1] exceeds it."""
    bad = np.nonzero(upper[1:] > threshold)[0]
    if len(bad) == 0:
        return 1
    last = int(bad[-1]) + 1
    if last == len(upper) - 1:
        return None
    return last + 1


def empirical_G(delta, scan_limit, block_size=None):
    """Least G with |eps(nu)| <= delta/3 for every nu in [G, scan_limit]."""
    _require_delta(delta, scan_limit)
    table = summatory_table(scan_limit, block_size)
    upper = np.abs(table.values['epsilon']) + table.errs['epsilon']
    G = _last_good_suffix(upper, delta / 3)
    logger.info(f"Empirical G({delta}) up to {scan_limit}: {G}")
    return ConvergenceReport(
        'empirical_G', delta, scan_limit, G=G,
        empirical=f'empirical on [1, {scan_limit}], not proved beyond it',
    )


def _least_xi(samples, delta):
    xi = None
    for x, ratio in reversed(samples):
        if ratio.upper > delta:
            break
        xi = x
    return xi


def _sample_points(scan_limit, stride):
    if stride < 1:
        raise DomainError(f"stride must be positive, got {stride}")
    return [x for x in range(stride, scan_limit + 1, stride) if x >= 2]


def _sample_report(name, points):
    lo, hi = (points[0], points[-1]) if points else (0, 0)
    return BoundReport(name, lo, hi)


def h_convergence(delta, scan_limit, stride, block_size=None):
    """Samples |h(x)|/log x and checks the bound chain for h at every sample."""
    _require_delta(delta, scan_limit)
    table = summatory_table(scan_limit, block_size)
    G = empirical_G(delta, scan_limit, block_size).G
    points = _sample_points(scan_limit, stride)
    report = ConvergenceReport(
        'h_convergence', delta, scan_limit, G=G,
        empirical=f'empirical on [1, {scan_limit}], not proved beyond it',
    )
    first_bound = _sample_report('h_variation_sum_bound', points)
    second_bound = _sample_report('h_weighted_sum_bound', points)
    assembled = _sample_report('h_assembled_bound', points)
    third = CertifiedFloat.from_rational(Fraction(delta) / 3)

    for x in points:
        h = table.h(x)
        log_x = CertifiedFloat.log(x)
        report.samples.append((x, abs(h) / log_x))
        if G is None:
            continue
        first, second = abel_sums(x, table)
        spread = third * (log_x + 1)
        conditions = [
            (first_bound, abs(first), 2 * (G - 1) + spread),
            (second_bound, abs(second), (G - 1) + spread),
            (assembled, abs(h), (3 * G - 2) + 2 * third + 2 * third * log_x),
        ]
        for bound, lhs, rhs in conditions:
            _report_conditions(bound, [x], [_compare(lhs, rhs)])

    if G is not None:
        report.checks = [first_bound, second_bound, assembled]
        report.threshold = (3 * G - 2 + 2 * delta / 3) / (delta / 3)
    report.xi = _least_xi(report.samples, delta)
    logger.info(f"h convergence: G={G}, xi={report.xi}, log threshold={report.threshold}")
    return report


def _mertens_abel_terms(hi, cutoff):
    limit = exact_cutoff(cutoff)
    if hi > limit:
        raise CutoffExceededError(f"Abel identity for M is exact only up to {limit}, got {hi}")
    table = exact_prefix_table(limit)
    prefix = list(accumulate(table.numerators[:hi + 1]))
    return table, prefix, summatory_table(hi).m


def _mertens_abel_check(x, table, prefix, mertens):
    # Both sides scaled by the common denominator L.
    lhs = int(mertens[x]) * table.denominator
    rhs = table.numerators[x] * x - prefix[x - 1]
    if lhs == rhs:
        value = int(mertens[x])
        return IdentityCheck('mertens_abel', x, value, value, True, 0.0, kind='exact')
    return _exact_check('mertens_abel', x, Fraction(lhs, table.denominator), Fraction(rhs, table.denominator))


def mertens_abel_identity(x, cutoff=None):
    """M(x) = -sum_{k < x} g(k) + g(x) * [x], exactly."""
    n = math.floor(x)
    if n < 1:
        raise DomainError(f"Abel identity for M needs x >= 1, got {x}")
    return _mertens_abel_check(n, *_mertens_abel_terms(n, cutoff))


def mertens_abel_scan(lo, hi, cutoff=None, points=None):
    """Abel identity for M at every x in [lo, hi], or only at ``points``."""
    table, prefix, mertens = _mertens_abel_terms(hi, cutoff)
    scan = IdentityScan('mertens_abel', lo, hi)
    for x in points if points is not None else range(max(lo, 1), hi + 1):
        scan.record(_mertens_abel_check(x, table, prefix, mertens))
    return scan


def m_over_x_convergence(delta, scan_limit, stride, cutoff=None, block_size=None):
    """Samples |M(x)|/x; exact Abel identity below the cutoff and the bound on M from G_g."""
    _require_delta(delta, scan_limit)
    if stride < 1:
        raise DomainError(f"stride must be positive, got {stride}")
    table = summatory_table(scan_limit, block_size)
    limit = exact_cutoff(cutoff)
    points = list(range(stride, scan_limit + 1, stride))

    g_upper = np.abs(table.values['g']) + table.errs['g']
    G = _last_good_suffix(g_upper, delta / 3)
    report = ConvergenceReport(
        'm_over_x_convergence', delta, scan_limit, G=G,
        empirical=f'empirical on [1, {scan_limit}], not proved beyond it',
    )
    exact_points = [x for x in points if x <= limit]
    if exact_points:
        abel = mertens_abel_scan(exact_points[0], exact_points[-1], cutoff, points=exact_points)
    else:
        abel = IdentityScan('mertens_abel', 0, 0)
    report.checks.append(abel)

    bound = _sample_report('mertens_g_bound', points)
    third = CertifiedFloat.from_rational(Fraction(delta) / 3)
    for x in points:
        m = int(table.m[x])
        report.samples.append((x, CertifiedFloat.from_rational(Fraction(abs(m), x))))
        if G is not None and x >= G:
            rhs = (G - 1) + third * (x - G) + third * x
            _report_conditions(bound, [x], [_compare(CertifiedFloat.exact(abs(m)), rhs)])

    if G is not None:
        report.checks.append(bound)
        report.threshold = max(G, (G - 1 - delta * G / 3) / (delta / 3))
    report.xi = _least_xi(report.samples, delta)
    logger.info(f"M(x)/x convergence: G_g={G}, xi={report.xi}, threshold={report.threshold}")
    return report


def f_convergence(delta, scan_limit, stride, gamma=None, block_size=None):
    """Samples |f(x)|/log x and checks |g(x)| <= (|f(x)| + 3 + gamma) / log x."""
    _require_delta(delta, scan_limit)
    table = summatory_table(scan_limit, block_size)
    gamma = moebius_setting('EULER_GAMMA') if gamma is None else gamma
    points = _sample_points(scan_limit, stride)
    report = ConvergenceReport(
        'f_convergence', delta, scan_limit,
        empirical=f'empirical on [1, {scan_limit}], not proved beyond it',
    )
    bound = _sample_report('g_from_f_bound', points)
    for x in points:
        f = table.certified('f', x)
        log_x = CertifiedFloat.log(x)
        report.samples.append((x, abs(f) / log_x))
        rhs = (abs(f) + (3 + gamma)) / log_x
        _report_conditions(bound, [x], [_compare(abs(table.g(x)), rhs)])
    report.checks = [bound]
    report.xi = _least_xi(report.samples, delta)
    return report
