"""
Summatory functions g, f, M, theta, epsilon, h and the harmonic sum.

Scalar entry points stream the segmented sieve block by block; range work goes
through ``scan_blocks`` (per-integer prefix arrays) or the cached
``SummatoryTable`` that identities and bounds share.
"""

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .conf import exact_cutoff
from .exceptions import DomainError
from .numeric import (
    EPS,
    CertifiedFloat,
    CompensatedSum,
    RunningSum,
    fsum_certified,
    prefix_arrays,
)
from .sieve import iter_blocks, moebius_table, sieve_moebius, sieve_prime_flags, sieve_primes

logger = logging.getLogger(__name__)

SUM_KEYS = ('g', 'f', 'theta', 'harmonic', 'squarefree')

# Error of one summand, in units of EPS * |summand|.
LOG_TERM_ERR = 2.0
WEIGHT_ERR = 3.0


def _floor_arg(x):
    if x < 0:
        raise DomainError(f"Argument must be non-negative, got {x}")
    return math.floor(x)


def _freeze(array):
    array.flags.writeable = False
    return array


@dataclass
class PrefixState:
    """Running sums of every summatory function through the integer ``x``."""

    x: int = 0
    m: int = 0
    sums: dict = field(default_factory=lambda: {key: RunningSum.empty() for key in SUM_KEYS})

    def certified(self, key):
        return self.sums[key].certified()

    def merge(self, delta):
        """Append the totals of the block that follows this state."""
        self.x = delta.x
        self.m += delta.m
        for key in SUM_KEYS:
            self.sums[key].merge(delta.sums[key])

    def copy(self):
        return PrefixState.from_payload(self.to_payload())

    def to_payload(self):
        return {
            'x': self.x,
            'm': self.m,
            'sums': {key: self.sums[key].to_payload() for key in SUM_KEYS},
        }

    @classmethod
    def from_payload(cls, payload):
        return cls(
            x=int(payload['x']),
            m=int(payload['m']),
            sums={key: RunningSum.from_payload(payload['sums'][key]) for key in SUM_KEYS},
        )


@dataclass(frozen=True)
class BlockTerms:
    lo: int
    hi: int
    numbers: np.ndarray
    mu: np.ndarray
    is_prime: np.ndarray
    exact: np.ndarray
    terms: dict

    @classmethod
    def sieve(cls, lo, hi, block_size=None):
        mu = sieve_moebius(lo, hi, block_size).values
        is_prime = sieve_prime_flags(lo, hi)
        numbers = np.arange(lo, hi + 1, dtype=np.int64)
        k = numbers.astype(np.float64)
        inverse = 1.0 / k
        log_k = np.log(k)
        signed = mu.astype(np.float64)
        terms = {
            'g': signed * inverse,
            'f': signed * log_k * inverse,
            'theta': np.where(is_prime, log_k, 0.0),
            'harmonic': inverse,
            'squarefree': np.abs(signed) * inverse,
        }
        exact = (numbers & (numbers - 1)) == 0
        return cls(lo, hi, numbers, mu, is_prime, exact, terms)

    def fold_into(self, state):
        for key in SUM_KEYS:
            if key in ('f', 'theta'):
                state.sums[key].add_terms(self.terms[key], rel_err=LOG_TERM_ERR)
            else:
                state.sums[key].add_terms(self.terms[key], exact_mask=self.exact)
        state.m += int(self.mu.sum(dtype=np.int64))
        state.x = self.hi


@dataclass(frozen=True)
class BlockScan:
    lo: int
    hi: int
    numbers: np.ndarray
    mu: np.ndarray
    is_prime: np.ndarray
    m: np.ndarray
    values: dict
    errs: dict

    def epsilon(self):
        k = self.numbers.astype(np.float64)
        ratio = self.values['theta'] / k
        value = ratio - 1.0
        err = self.errs['theta'] / k + EPS * (np.abs(ratio) + np.abs(value))
        return value, err


def scan_block(lo, hi, state, block_size=None):
    """Scan [lo, hi] starting from ``state`` (through lo - 1); advances state."""
    if state.x != lo - 1:
        raise ValueError(f"State is at {state.x}, block starts at {lo}")
    block = BlockTerms.sieve(lo, hi, block_size)
    values, errs = {}, {}
    for key in SUM_KEYS:
        if key in ('f', 'theta'):
            values[key], errs[key] = prefix_arrays(state.sums[key], block.terms[key], rel_err=LOG_TERM_ERR)
        else:
            values[key], errs[key] = prefix_arrays(state.sums[key], block.terms[key], exact_mask=block.exact)
    m = state.m + np.cumsum(block.mu, dtype=np.int64)
    block.fold_into(state)
    return BlockScan(lo, hi, block.numbers, block.mu, block.is_prime, m, values, errs)


def block_totals(lo, hi, block_size=None):
    """Totals of [lo, hi] as a PrefixState delta (x = hi)."""
    delta = PrefixState(x=lo - 1)
    for block_lo, block_hi in iter_blocks(lo, hi, block_size):
        BlockTerms.sieve(block_lo, block_hi, block_size).fold_into(delta)
    return delta


def scan_blocks(lo, hi, start=None, block_size=None):
    if start is None:
        start = block_totals(1, lo - 1, block_size) if lo > 1 else PrefixState()
        start.x = lo - 1
    state = start.copy()
    for block_lo, block_hi in iter_blocks(lo, hi, block_size):
        logger.debug(f"Scanning block [{block_lo}, {block_hi}]")
        yield scan_block(block_lo, block_hi, state, block_size)


def _stream_sum(n, key, block_size=None):
    state = PrefixState()
    for lo, hi in iter_blocks(1, n, block_size):
        BlockTerms.sieve(lo, hi, block_size).fold_into(state)
    return state.certified(key)


class SummatoryTable:
    """Certified values of every summatory function at each integer 0..limit.

    Index 0 holds the x < 1 convention (all sums empty). Arrays are read-only.
    """

    def __init__(self, limit, block_size=None):
        self.limit = int(limit)
        size = self.limit + 1
        self.mu = np.zeros(size, dtype=np.int8)
        self.is_prime = np.zeros(size, dtype=bool)
        self.m = np.zeros(size, dtype=np.int64)
        self.values = {key: np.zeros(size) for key in SUM_KEYS + ('epsilon',)}
        self.errs = {key: np.zeros(size) for key in SUM_KEYS + ('epsilon',)}
        for scan in scan_blocks(1, self.limit, block_size=block_size):
            window = slice(scan.lo, scan.hi + 1)
            self.mu[window] = scan.mu
            self.is_prime[window] = scan.is_prime
            self.m[window] = scan.m
            for key in SUM_KEYS:
                self.values[key][window] = scan.values[key]
                self.errs[key][window] = scan.errs[key]
            self.values['epsilon'][window], self.errs['epsilon'][window] = scan.epsilon()
        for array in (self.mu, self.is_prime, self.m, *self.values.values(), *self.errs.values()):
            _freeze(array)

        prime_table = sieve_primes(self.limit)
        self.primes = prime_table.primes
        self.log_p = _freeze(prime_table.log_weights())
        self.weights = _freeze(self.log_p / self.primes)
        self.weight_errs = _freeze(WEIGHT_ERR * EPS * self.weights)
        self._prime_powers = None
        logger.debug(f"Built summatory table up to {self.limit}")

    def certified(self, key, x):
        n = _floor_arg(x)
        return CertifiedFloat(float(self.values[key][n]), float(self.errs[key][n]))

    def g(self, x):
        return self.certified('g', x)

    def primes_upto(self, x):
        return int(np.searchsorted(self.primes, math.floor(x), side='right'))

    def h(self, x):
        """h(x) = sum over p <= x of (log p / p) g(x/p)."""
        n = math.floor(x)
        count = self.primes_upto(n)
        if count == 0:
            return CertifiedFloat(0.0, 0.0)
        q = n // self.primes[:count]
        g, g_err = self.values['g'][q], self.errs['g'][q]
        w, w_err = self.weights[:count], self.weight_errs[:count]
        terms = w * g
        term_errs = w * g_err + w_err * np.abs(g) + EPS * np.abs(terms)
        return fsum_certified(terms, term_errs)

    @property
    def prime_powers(self):
        """(p**i, log p, log p / p**i) for every prime power p**i <= limit with i >= 2."""
        if self._prime_powers is None:
            powers, logs = [], []
            for p, log_p in zip(self.primes.tolist(), self.log_p.tolist()):
                power = p * p
                if power > self.limit:
                    break
                while power <= self.limit:
                    powers.append(power)
                    logs.append(log_p)
                    power *= p
            powers = np.array(powers, dtype=np.int64)
            logs = np.array(logs, dtype=np.float64)
            order = np.argsort(powers, kind='stable')
            powers, logs = powers[order], logs[order]
            self._prime_powers = (_freeze(powers), _freeze(logs), _freeze(logs / powers))
        return self._prime_powers

    def tail(self, x):
        """Signed i >= 2 part of the f decomposition: sum log p * p**-i * g(x / p**i)."""
        n = math.floor(x)
        powers, _, coefficients = self.prime_powers
        count = int(np.searchsorted(powers, n, side='right'))
        if count == 0:
            return CertifiedFloat(0.0, 0.0)
        q = n // powers[:count]
        g, g_err = self.values['g'][q], self.errs['g'][q]
        c = coefficients[:count]
        terms = c * g
        term_errs = c * g_err + WEIGHT_ERR * EPS * c * np.abs(g) + EPS * np.abs(terms)
        return fsum_certified(terms, term_errs)


@lru_cache(maxsize=4)
def summatory_table(limit, block_size=None):
    return SummatoryTable(limit, block_size)


class ExactPrefixTable:
    """Exact g, harmonic and squarefree-harmonic prefixes over the denominator lcm(1..n).

    g(k) = numerators[k] / denominator, H(k) = harmonic[k] / denominator and
    sum_{j <= k} |mu(j)| / j = squarefree[k] / denominator.
    """

    def __init__(self, n):
        self.n = int(n)
        self.denominator = math.lcm(*range(1, self.n + 1)) if self.n else 1
        mu = moebius_table(self.n) if self.n else np.zeros(1, dtype=np.int8)
        numerators = [0] * (self.n + 1)
        harmonic = [0] * (self.n + 1)
        squarefree = [0] * (self.n + 1)
        g_acc = h_acc = s_acc = 0
        for k, sign in enumerate(mu.tolist()[1:], start=1):
            share = self.denominator // k
            h_acc += share
            if sign:
                g_acc += share if sign > 0 else -share
                s_acc += share
            numerators[k] = g_acc
            harmonic[k] = h_acc
            squarefree[k] = s_acc
        self.numerators = numerators
        self.harmonic = harmonic
        self.squarefree = squarefree

    def g(self, k):
        return Fraction(self.numerators[k], self.denominator)

    def harmonic_span(self, a, b):
        """sum_{a <= nu <= b} 1/nu exactly."""
        return Fraction(self.harmonic[b] - self.harmonic[a - 1], self.denominator)


@lru_cache(maxsize=4)
def exact_prefix_table(n):
    return ExactPrefixTable(n)


def _exact_table_for(n, cutoff=None):
    limit = exact_cutoff(cutoff)
    if n <= limit:
        return exact_prefix_table(limit)
    logger.warning(f"Exact prefix table requested at {n}, above the cutoff {limit}")
    return exact_prefix_table(n)


def g_exact(x, cutoff=None):
    n = _floor_arg(x)
    if n < 1:
        return Fraction(0)
    return _exact_table_for(n, cutoff).g(n)


def g_float(x, block_size=None):
    n = _floor_arg(x)
    if n < 1:
        return CertifiedFloat(0.0, 0.0)
    return _stream_sum(n, 'g', block_size)


def f_value(x, block_size=None):
    if x < 1:
        raise DomainError(f"f is evaluated for x >= 1, got {x}")
    n = math.floor(x)
    if n < 2:
        return CertifiedFloat(0.0, 0.0)
    return _stream_sum(n, 'f', block_size)


def big_m(x, block_size=None):
    n = _floor_arg(x)
    total = 0
    for lo, hi in iter_blocks(1, n, block_size):
        total += int(sieve_moebius(lo, hi, block_size).values.sum(dtype=np.int64))
    return total


def mertens_at(points, block_size=None):
    """{x: M(x)} for every point, from one streamed sieve pass."""
    targets = sorted({_floor_arg(x) for x in points})
    values = {x: 0 for x in targets if x < 1}
    pending = [x for x in targets if x >= 1]
    if not pending:
        return values
    total = 0
    i = 0
    for lo, hi in iter_blocks(1, pending[-1], block_size):
        prefix = total + np.cumsum(sieve_moebius(lo, hi, block_size).values, dtype=np.int64)
        while i < len(pending) and pending[i] <= hi:
            values[pending[i]] = int(prefix[pending[i] - lo])
            i += 1
        total = int(prefix[-1])
    return values


def theta(x, block_size=None):
    n = _floor_arg(x)
    if n < 2:
        return CertifiedFloat(0.0, 0.0)
    return _stream_sum(n, 'theta', block_size)


def epsilon(x, block_size=None):
    if x == 0:
        return CertifiedFloat(0.0, 0.0)
    if x < 0:
        raise DomainError(f"epsilon is defined for x >= 0, got {x}")
    divisor = CertifiedFloat.from_rational(Fraction(x))
    return theta(x, block_size) / divisor - 1


def harmonic(x, block_size=None):
    if x < 1:
        raise DomainError(f"Harmonic sum is evaluated for x >= 1, got {x}")
    return _stream_sum(math.floor(x), 'harmonic', block_size)


def squarefree_harmonic(x, block_size=None):
    if x < 1:
        raise DomainError(f"Harmonic sum is evaluated for x >= 1, got {x}")
    return _stream_sum(math.floor(x), 'squarefree', block_size)


def h_direct(x, cutoff=None, block_size=None):
    """h(x) with exact inner g values below the cutoff, the float table above."""
    if x < 1:
        raise DomainError(f"h is evaluated for x >= 1, got {x}")
    n = math.floor(x)
    if n > exact_cutoff(cutoff):
        return summatory_table(n, block_size).h(n)
    total = CompensatedSum()
    magnitude = term_err = 0.0
    count = 0
    for p in sieve_primes(n):
        inner = g_exact(n // p, cutoff)
        if inner == 0:
            continue
        term = CertifiedFloat.log(p) / p * CertifiedFloat.from_rational(inner)
        total.add(term.value)
        magnitude += abs(term.value)
        term_err += term.err
        count += 1
    return CertifiedFloat(total.total, term_err + max(count - 1, 0) * EPS * magnitude)


@dataclass(frozen=True)
class SeriesRecord:
    x: int
    g: CertifiedFloat
    f: CertifiedFloat
    m: int
    theta: CertifiedFloat
    epsilon: CertifiedFloat
    h: CertifiedFloat


@dataclass(frozen=True)
class SummatorySeries:
    limit: int
    stride: int
    records: tuple

    def __len__(self):
        return len(self.records)

    def __iter__(self):
        return iter(self.records)

    def at(self, x):
        for record in self.records:
            if record.x == x:
                return record
        raise KeyError(x)


def series_scan(limit, stride, block_size=None):
    """Sample records at x = stride, 2*stride, ... <= limit from one sieve pass."""
    if limit < 1 or stride < 1:
        raise DomainError(f"limit and stride must be positive, got {limit}, {stride}")
    table = summatory_table(int(limit), block_size)
    records = []
    for x in range(stride, limit + 1, stride):
        records.append(SeriesRecord(
            x=x,
            g=table.certified('g', x),
            f=table.certified('f', x),
            m=int(table.m[x]),
            theta=table.certified('theta', x),
            epsilon=table.certified('epsilon', x),
            h=table.h(x),
        ))
    logger.info(f"Series scan produced {len(records)} records up to {limit}")
    return SummatorySeries(limit=int(limit), stride=int(stride), records=tuple(records))
