"""
Sub-linear M(x) and g(x) from the floor-quotient recursions

    sum_{nu <= x} M(x // nu) = 1        sum_{nu <= x} g(x // nu) / nu = 1

Arguments up to the crossover K come from a sieve; the O(x / K) larger
arguments x // v are filled in increasing order, each from runs of nu that
share one quotient.
"""

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .conf import exact_cutoff
from .exceptions import CutoffExceededError, DomainError
from .identities import IdentityCheck, IdentityScan
from .numeric import EPS, CertifiedFloat
from .sieve import moebius_table
from .summatory import exact_prefix_table, mertens_at, summatory_table

logger = logging.getLogger(__name__)

# Below this many terms, or this start index, harmonic spans are summed directly.
_DIRECT_SPAN = 64
_ASYMPTOTIC_START = 1000


def _check_root(x):
    if x < 1:
        raise DomainError(f"Recursion root must be >= 1, got {x}")
    return int(x)


def default_crossover(x):
    return max(1, min(x, math.ceil(x ** (2 / 3))))


def quotient_blocks(x):
    """Maximal runs (q, nu_lo, nu_hi) with x // nu == q, in increasing nu."""
    x = _check_root(x)
    blocks = []
    nu = 1
    while nu <= x:
        q = x // nu
        last = x // q
        blocks.append((q, nu, last))
        nu = last + 1
    return blocks


@dataclass
class FloorValueMap:
    """Values of a summatory function at every floor argument x // v.

    ``small[q]`` holds arguments q <= K; ``large[v]`` holds x // v > K keyed by
    the divisor v, which keeps the keys small.
    """

    x: int
    crossover: int
    small: list
    large: dict = field(default_factory=dict)

    def __getitem__(self, v):
        q = self.x // v
        if q <= self.crossover:
            return self.small[q]
        return self.large[v]

    @property
    def large_divisors(self):
        """Divisors v with x // v > K, in decreasing order (increasing argument)."""
        return range(self.x // (self.crossover + 1), 0, -1)

    @property
    def distinct_arguments(self):
        small_count = sum(1 for q, _, _ in quotient_blocks(self.x) if q <= self.crossover)
        return len(self.large) + small_count


def _fill_m(memo):
    small = memo.small
    for v in memo.large_divisors:
        n = memo.x // v
        total = 1
        nu = 2
        while nu <= n:
            q = n // nu
            last = n // q
            value = small[q] if q <= memo.crossover else memo.large[v * nu]
            total -= (last - nu + 1) * value
            nu = last + 1
        memo.large[v] = total


class MertensEvaluator:
    """Evaluates M at many roots against one sieved prefix table."""

    def __init__(self, table_limit, block_size=None):
        self.table_limit = int(table_limit)
        mu = moebius_table(self.table_limit, block_size)
        self.prefix = np.cumsum(mu, dtype=np.int64).tolist()

    def memo(self, x, crossover=None):
        x = _check_root(x)
        k = min(crossover or default_crossover(x), x)
        if k > self.table_limit:
            raise DomainError(f"Crossover {k} exceeds the sieved table {self.table_limit}")
        memo = FloorValueMap(x=x, crossover=k, small=self.prefix)
        _fill_m(memo)
        return memo

    def __call__(self, x, crossover=None):
        x = _check_root(x)
        k = min(crossover or default_crossover(x), x)
        if x <= k:
            return self.prefix[x]
        memo = self.memo(x, k)
        logger.debug(f"M({x}) used {len(memo.large)} large arguments with K={k}")
        return memo.large[1]


def m_recursive(x, crossover=None, block_size=None):
    x = _check_root(x)
    k = min(crossover or default_crossover(x), x)
    return MertensEvaluator(k, block_size)(x, k)


def m_recursive_memo(x, crossover=None, block_size=None):
    x = _check_root(x)
    k = min(crossover or default_crossover(x), x)
    return MertensEvaluator(k, block_size).memo(x, k)


def _direct_span(a, b):
    terms = [1.0 / nu for nu in range(a, b + 1)]
    value = math.fsum(terms)
    return value, EPS * value * (len(terms) + 1)


def harmonic_span(a, b):
    """Certified 1/a + ... + 1/b as (value, err)."""
    if b - a < _DIRECT_SPAN or b <= _ASYMPTOTIC_START:
        return _direct_span(a, b)
    if a - 1 >= _ASYMPTOTIC_START:
        return _asymptotic_span(a - 1, b)
    head = _direct_span(a, _ASYMPTOTIC_START)
    tail = _asymptotic_span(_ASYMPTOTIC_START, b)
    value = head[0] + tail[0]
    return value, head[1] + tail[1] + EPS * value


def _asymptotic_span(a, b):
    # H(b) - H(a) from the Euler-Maclaurin expansion of H(n) - log n.
    value = math.log1p((b - a) / a)
    value += 0.5 / b - 0.5 / a
    value += 1 / (12 * a * a) - 1 / (12 * b * b)
    value += 1 / (120 * b ** 4) - 1 / (120 * a ** 4)
    truncation = 2 / (252 * a ** 6)
    return value, truncation + 8 * EPS * abs(value) + EPS / a


def _fill_g_float(memo):
    for v in memo.large_divisors:
        n = memo.x // v
        total = 1.0
        err = 0.0
        magnitude = 1.0
        count = 1
        nu = 2
        while nu <= n:
            q = n // nu
            last = n // q
            g_value, g_err = memo.small[q] if q <= memo.crossover else memo.large[v * nu]
            if g_value or g_err:
                if last == nu:
                    span, span_err = 1.0 / nu, EPS / nu
                else:
                    span, span_err = harmonic_span(nu, last)
                term = g_value * span
                total -= term
                err += abs(g_value) * span_err + g_err * span + EPS * abs(term)
                magnitude += abs(term)
                count += 1
            nu = last + 1
        memo.large[v] = (total, err + (count - 1) * EPS * magnitude)


def _fill_g_exact(memo, table):
    for v in memo.large_divisors:
        n = memo.x // v
        total = Fraction(1)
        nu = 2
        while nu <= n:
            q = n // nu
            last = n // q
            value = memo.small[q] if q <= memo.crossover else memo.large[v * nu]
            if value:
                total -= value * table.harmonic_span(nu, last)
            nu = last + 1
        memo.large[v] = total


class _ExactSmall:
    def __init__(self, table):
        self.table = table

    def __getitem__(self, q):
        return self.table.g(q)


class _FloatSmall:
    def __init__(self, table):
        self.values = table.values['g']
        self.errs = table.errs['g']

    def __getitem__(self, q):
        return float(self.values[q]), float(self.errs[q])


def g_recursive_memo(x, mode='auto', crossover=None, cutoff=None, block_size=None):
    x = _check_root(x)
    limit = exact_cutoff(cutoff)
    if mode == 'auto':
        mode = 'exact' if x <= limit else 'float'
    if mode not in ('exact', 'float'):
        raise DomainError(f"Unknown mode {mode!r}")
    k = min(crossover or default_crossover(x), x)

    if mode == 'exact':
        if x > limit:
            raise CutoffExceededError(f"Exact recursion above the cutoff {limit}: {x}")
        table = exact_prefix_table(limit)
        memo = FloorValueMap(x=x, crossover=k, small=_ExactSmall(table))
        _fill_g_exact(memo, table)
        return memo

    table = summatory_table(k, block_size)
    memo = FloorValueMap(x=x, crossover=k, small=_FloatSmall(table))
    _fill_g_float(memo)
    return memo


def g_recursive(x, mode='auto', crossover=None, cutoff=None, block_size=None):
    """g(x) via the Gram recursion: a Fraction in exact mode, else a CertifiedFloat."""
    memo = g_recursive_memo(x, mode, crossover, cutoff, block_size)
    value = memo.small[x] if x <= memo.crossover else memo.large[1]
    if isinstance(value, Fraction):
        return value
    return CertifiedFloat(*value)


def _recursion_check(x, recursive, sieved):
    return IdentityCheck('mertens_recursion', x, recursive, sieved, recursive == sieved,
                         float(abs(recursive - sieved)), kind='exact')


def mertens_recursion_scan(lo, hi, samples=0, sample_limit=None, crossover=None, seed=0, block_size=None):
    """m_recursive against the sieve on all of [lo, hi] plus ``samples`` seeded random x <= sample_limit."""
    if lo < 1 or hi < lo:
        raise DomainError(f"Recursion scans need 1 <= lo <= hi, got [{lo}, {hi}]")
    sample_limit = sample_limit or hi
    scan = IdentityScan('mertens_recursion', lo, max(hi, sample_limit))

    evaluator = MertensEvaluator(min(crossover or default_crossover(hi), hi), block_size)
    sieved = np.cumsum(moebius_table(hi, block_size), dtype=np.int64)
    for x in range(lo, hi + 1):
        k = min(crossover or default_crossover(x), x)
        scan.record(_recursion_check(x, evaluator(x, k), int(sieved[x])))

    if samples:
        rng = np.random.default_rng(seed)
        points = sorted(set(rng.integers(1, sample_limit + 1, size=samples).tolist()))
        expected = mertens_at(points, block_size)
        evaluator = MertensEvaluator(min(crossover or default_crossover(sample_limit), sample_limit), block_size)
        for x in points:
            k = min(crossover or default_crossover(x), x)
            scan.record(_recursion_check(x, evaluator(x, k), expected[x]))
    logger.info(f"Recursion against sieve on {scan.checked} points: {scan.failure_count} mismatches")
    return scan
