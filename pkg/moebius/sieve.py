"""
Segmented sieves for mu(k), prime flags and log p weights.

Base primes up to sqrt(hi) are cached per bound; each block is sieved on its own.
"""

import logging
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .conf import block_size as configured_block_size
from .exceptions import DomainError, RangeTooLargeError

logger = logging.getLogger(__name__)


def _freeze(array):
    array.flags.writeable = False
    return array


@dataclass(frozen=True)
class MoebiusBlock:
    """mu(k) for every k in [lo, hi]; values[k - lo] is -1, 0 or +1."""

    lo: int
    hi: int
    values: np.ndarray

    def __post_init__(self):
        if self.lo < 1 or self.hi < self.lo:
            raise DomainError(f"Invalid block bounds [{self.lo}, {self.hi}]")
        if len(self.values) != self.hi - self.lo + 1:
            raise ValueError("Block length does not match its bounds")

    def __len__(self):
        return len(self.values)

    def __getitem__(self, k):
        if not self.lo <= k <= self.hi:
            raise IndexError(f"{k} outside [{self.lo}, {self.hi}]")
        return int(self.values[k - self.lo])

    def tolist(self):
        return [int(v) for v in self.values]


@dataclass(frozen=True)
class PrimeTable:
    limit: int
    primes: np.ndarray

    def __len__(self):
        return len(self.primes)

    def __iter__(self):
        return (int(p) for p in self.primes)

    def __contains__(self, n):
        i = int(np.searchsorted(self.primes, n))
        return i < len(self.primes) and int(self.primes[i]) == n

    def upto(self, x):
        return self.primes[:int(np.searchsorted(self.primes, x, side='right'))]

    def log_weights(self, x=None):
        primes = self.primes if x is None else self.upto(x)
        return np.log(primes.astype(np.float64))


@lru_cache(maxsize=16)
def _eratosthenes(limit):
    if limit < 2:
        return _freeze(np.zeros(0, dtype=np.int64))
    is_prime = np.ones(limit + 1, dtype=bool)
    is_prime[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if is_prime[p]:
            is_prime[p * p::p] = False
    return _freeze(np.nonzero(is_prime)[0].astype(np.int64))


def base_primes(hi):
    """Primes up to isqrt(hi), the sieving primes for any block ending at hi."""
    return _eratosthenes(math.isqrt(hi))


def sieve_primes(limit):
    if limit < 1:
        raise DomainError(f"Prime table limit must be positive, got {limit}")
    return PrimeTable(limit=int(limit), primes=_eratosthenes(int(limit)))


def _first_multiple(lo, d):
    return -(-lo // d) * d


def sieve_moebius(lo, hi, block_size=None):
    """mu over [lo, hi] by product marking.

    Every prime p <= sqrt(hi) flips the sign of its multiples and multiplies
    their running product of small prime factors by p; multiples of p**2 are
    zeroed. A squarefree k whose product falls short of k has exactly one
    prime factor above sqrt(hi) left, which flips the sign once more.
    """
    lo, hi = int(lo), int(hi)
    if lo < 1:
        raise DomainError(f"mu is defined on positive integers, got lo={lo}")
    if hi < lo:
        raise DomainError(f"Empty range [{lo}, {hi}]")
    capacity = configured_block_size(block_size)
    size = hi - lo + 1
    if size > capacity:
        raise RangeTooLargeError(f"Block of {size} values exceeds capacity {capacity}")

    mu = np.ones(size, dtype=np.int8)
    product = np.ones(size, dtype=np.int64)
    for p in base_primes(hi).tolist():
        start = _first_multiple(lo, p) - lo
        mu[start::p] *= -1
        product[start::p] *= p
        square = p * p
        mu[_first_multiple(lo, square) - lo::square] = 0

    numbers = np.arange(lo, hi + 1, dtype=np.int64)
    leftover = (mu != 0) & (product != numbers)
    mu[leftover] *= -1
    return MoebiusBlock(lo=lo, hi=hi, values=_freeze(mu))


def sieve_prime_flags(lo, hi):
    lo, hi = int(lo), int(hi)
    flags = np.ones(hi - lo + 1, dtype=bool)
    if lo < 2:
        flags[:2 - lo] = False
    for p in base_primes(hi).tolist():
        start = max(p * p, _first_multiple(lo, p))
        flags[start - lo::p] = False
    return _freeze(flags)


def iter_blocks(lo, hi, block_size=None):
    step = configured_block_size(block_size)
    start = lo
    while start <= hi:
        stop = min(hi, start + step - 1)
        yield start, stop
        start = stop + 1


def moebius_table(limit, block_size=None):
    """mu(0..limit) as one array with mu(0) = 0, sieved block by block."""
    table = np.zeros(limit + 1, dtype=np.int8)
    for lo, hi in iter_blocks(1, limit, block_size):
        table[lo:hi + 1] = sieve_moebius(lo, hi, block_size).values
    return _freeze(table)


def is_prime(n):
    n = int(n)
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def moebius_oracle(k):
    """mu(k) by trial division up to sqrt(k); independent of the sieve."""
    k = int(k)
    if k < 1:
        raise DomainError(f"mu is defined on positive integers, got {k}")
    sign = 1
    n = k
    d = 2
    while d * d <= n:
        if n % d == 0:
            n //= d
            if n % d == 0:
                return 0
            sign = -sign
        d += 1 if d == 2 else 2
    if n > 1:
        sign = -sign
    return sign
