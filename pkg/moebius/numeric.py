"""
Floating point with a certified absolute error bound.

Error model used throughout the package:

* a rational summand such as mu(k)/k carries one rounding, at most EPS * |t|,
  and none when the quotient is exact;
* a summand involving a platform logarithm carries 2 * EPS * |t|;
* a running sum of n non-zero summands carries (n - 1) * EPS * sum(|t|) on
  top of the summand errors.
"""

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

EPS = 2.0 ** -52


def _two_sum(a, b):
    s = a + b
    z = s - a
    return s, (a - (s - z)) + (b - z)


def _rounding(value):
    return math.ulp(value) / 2 if value else 0.0


@dataclass(frozen=True)
class CertifiedFloat:
    value: float
    err: float = 0.0

    def __post_init__(self):
        if self.err < 0 or math.isnan(self.err):
            raise ValueError(f"Error bound must be non-negative, got {self.err}")

    @classmethod
    def exact(cls, value):
        return cls(float(value), 0.0)

    @classmethod
    def from_rational(cls, q):
        value = float(q)
        if Fraction(value) == q:
            return cls(value, 0.0)
        return cls(value, _rounding(value))

    @classmethod
    def log(cls, k):
        if k == 1:
            return cls(0.0, 0.0)
        value = math.log(k)
        return cls(value, 2 * math.ulp(value))

    @property
    def lower(self):
        return self.value - self.err

    @property
    def upper(self):
        return self.value + self.err

    def contains(self, exact):
        return abs(Fraction(self.value) - Fraction(exact)) <= Fraction(self.err)

    def __neg__(self):
        return CertifiedFloat(-self.value, self.err)

    def __abs__(self):
        return CertifiedFloat(abs(self.value), self.err)

    def __add__(self, other):
        other = _certify(other)
        value, rounding = _two_sum(self.value, other.value)
        return CertifiedFloat(value, self.err + other.err + abs(rounding))

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-_certify(other))

    def __rsub__(self, other):
        return _certify(other) - self

    def __mul__(self, other):
        other = _certify(other)
        value = self.value * other.value
        err = (abs(self.value) * other.err + abs(other.value) * self.err
               + self.err * other.err + _rounding(value))
        return CertifiedFloat(value, err)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _certify(other)
        margin = abs(other.value) - other.err
        if margin <= 0:
            raise ZeroDivisionError("Divisor interval contains zero")
        value = self.value / other.value
        err = (abs(self.value) * other.err + abs(other.value) * self.err) / (abs(other.value) * margin)
        return CertifiedFloat(value, err + _rounding(value))

    def __str__(self):
        return f"{self.value!r} ± {self.err:.3e}"


def _certify(value):
    if isinstance(value, CertifiedFloat):
        return value
    if isinstance(value, Fraction):
        return CertifiedFloat.from_rational(value)
    return CertifiedFloat.exact(value)


class CompensatedSum:
    """Neumaier's variant of Kahan summation."""

    def __init__(self, total=0.0, carry=0.0):
        self.sum = float(total)
        self.carry = float(carry)

    def add(self, value):
        self.sum, rounding = _two_sum(self.sum, float(value))
        self.carry += rounding

    @property
    def total(self):
        return self.sum + self.carry


@dataclass
class RunningSum:
    acc: CompensatedSum
    magnitude: float = 0.0
    count: int = 0
    term_err: float = 0.0

    @classmethod
    def empty(cls):
        return cls(CompensatedSum())

    def add_terms(self, terms, rel_err=1.0, exact_mask=None):
        """Fold a block of summands; rel_err is the per-summand error in EPS units."""
        terms = np.asarray(terms, dtype=np.float64)
        nonzero = terms != 0
        if not nonzero.any():
            return
        live = terms[nonzero]
        magnitudes = np.abs(live)
        if exact_mask is not None:
            inexact = ~np.asarray(exact_mask)[nonzero]
            self.term_err += rel_err * EPS * math.fsum(magnitudes[inexact])
        else:
            self.term_err += rel_err * EPS * math.fsum(magnitudes)
        self.acc.add(math.fsum(live))
        self.magnitude += math.fsum(magnitudes)
        self.count += int(live.size)

    def merge(self, other):
        self.acc.add(other.acc.sum)
        self.acc.add(other.acc.carry)
        self.magnitude += other.magnitude
        self.count += other.count
        self.term_err += other.term_err

    @property
    def err(self):
        return self.term_err + max(self.count - 1, 0) * EPS * self.magnitude

    def certified(self):
        return CertifiedFloat(self.acc.total, self.err)

    def to_payload(self):
        return [self.acc.sum, self.acc.carry, self.magnitude, self.count, self.term_err]

    @classmethod
    def from_payload(cls, payload):
        total, carry, magnitude, count, term_err = payload
        return cls(CompensatedSum(total, carry), float(magnitude), int(count), float(term_err))


def prefix_arrays(start, terms, rel_err=1.0, exact_mask=None):
    """(values, errs) of start + cumsum(terms) at every position; ``start`` is not modified."""
    terms = np.asarray(terms, dtype=np.float64)
    magnitudes = np.abs(terms)
    if exact_mask is None:
        term_errs = rel_err * EPS * magnitudes
    else:
        term_errs = np.where(exact_mask, 0.0, rel_err * EPS * magnitudes)
    values = start.acc.total + np.cumsum(terms)
    counts = start.count + np.cumsum(terms != 0)
    mags = start.magnitude + np.cumsum(magnitudes)
    errs = start.term_err + np.cumsum(term_errs) + np.maximum(counts - 1, 0) * EPS * mags
    return values, errs


def fsum_certified(terms, term_errs):
    """Correctly rounded sum of float terms whose own errors are term_errs."""
    terms = np.asarray(terms, dtype=np.float64)
    if terms.size == 0:
        return CertifiedFloat(0.0, 0.0)
    value = math.fsum(terms)
    err = math.fsum(np.asarray(term_errs, dtype=np.float64)) + _rounding(value)
    return CertifiedFloat(value, err)
