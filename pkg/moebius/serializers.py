import logging
import math
from dataclasses import dataclass
from decimal import ROUND_CEILING, Decimal

from rest_framework import serializers

logger = logging.getLogger(__name__)

SUBCOMMANDS = ('table', 'verify', 'converge', 'fast', 'bench')


@dataclass(frozen=True)
class RunConfig:
    subcommand: str
    limit: int
    stride: int
    delta: float = None
    out: str = None
    cutoff: int = None
    blocksize: int = None
    crossover: int = None


def default_stride(subcommand, limit):
    if subcommand == 'converge':
        return max(1, limit // 1000)
    if subcommand in ('fast', 'bench'):
        return limit
    return 1


class RunConfigSerializer(serializers.Serializer):
    subcommand = serializers.ChoiceField(choices=SUBCOMMANDS)
    limit = serializers.IntegerField(min_value=1)
    stride = serializers.IntegerField(min_value=1, required=False, allow_null=True)
    delta = serializers.FloatField(required=False, allow_null=True)
    out = serializers.CharField(required=False, allow_null=True, allow_blank=False)
    cutoff = serializers.IntegerField(min_value=1, required=False, allow_null=True)
    blocksize = serializers.IntegerField(min_value=1, required=False, allow_null=True)
    crossover = serializers.IntegerField(min_value=1, required=False, allow_null=True)

    def validate_delta(self, value):
        if value is not None and (not math.isfinite(value) or value <= 0):
            raise serializers.ValidationError("delta must be a positive number")
        return value

    def validate(self, data):
        if data['subcommand'] == 'converge' and data.get('delta') is None:
            raise serializers.ValidationError({'delta': "converge needs --delta"})
        return data

    def create(self, validated_data):
        stride = validated_data.get('stride')
        if stride is None:
            stride = default_stride(validated_data['subcommand'], validated_data['limit'])
        return RunConfig(
            subcommand=validated_data['subcommand'],
            limit=validated_data['limit'],
            stride=stride,
            delta=validated_data.get('delta'),
            out=validated_data.get('out'),
            cutoff=validated_data.get('cutoff'),
            blocksize=validated_data.get('blocksize'),
            crossover=validated_data.get('crossover'),
        )


class SignificantFloatField(serializers.Field):
    """A double with 17 significant digits, enough to round-trip."""

    def to_representation(self, value):
        return format(float(value), '.17g')


class ErrorBoundField(serializers.Field):
    """A non-negative error bound in scientific notation, rounded upward."""

    def to_representation(self, value):
        bound = Decimal(float(value))
        if bound == 0:
            return '0.00e+00'
        exponent = bound.adjusted()
        mantissa = bound.scaleb(-exponent).quantize(Decimal('0.01'), rounding=ROUND_CEILING)
        if mantissa >= 10:
            exponent += 1
            mantissa = bound.scaleb(-exponent).quantize(Decimal('0.01'), rounding=ROUND_CEILING)
        return f"{mantissa}e{exponent:+03d}"


class VerdictField(serializers.Field):
    def to_representation(self, value):
        return 'true' if value else 'false'


class TableRowSerializer(serializers.Serializer):
    x = serializers.IntegerField()
    g = SignificantFloatField()
    g_err = ErrorBoundField()
    f = SignificantFloatField()
    f_err = ErrorBoundField()
    M = serializers.IntegerField()
    theta = SignificantFloatField()
    theta_err = ErrorBoundField()
    epsilon = SignificantFloatField()
    h = SignificantFloatField()
    h_err = ErrorBoundField()

    @classmethod
    def from_record(cls, record):
        return cls({
            'x': record.x,
            'g': record.g.value,
            'g_err': record.g.err,
            'f': record.f.value,
            'f_err': record.f.err,
            'M': record.m,
            'theta': record.theta.value,
            'theta_err': record.theta.err,
            'epsilon': record.epsilon.value,
            'h': record.h.value,
            'h_err': record.h.err,
        })


class VerifyRowSerializer(serializers.Serializer):
    check = serializers.CharField()
    lo = serializers.IntegerField()
    hi = serializers.IntegerField()
    passed = VerdictField()
    checked = serializers.IntegerField()
    failures = serializers.IntegerField()
    max_value = SignificantFloatField()

    @classmethod
    def from_scan(cls, scan):
        """Row for an IdentityScan (max slack) or a BoundReport (max ratio)."""
        if hasattr(scan, 'max_slack'):
            failures, max_value = scan.failure_count, scan.max_slack
        else:
            failures, max_value = scan.violation_count, scan.max_ratio
        return cls({
            'check': scan.name,
            'lo': scan.lo,
            'hi': scan.hi,
            'passed': scan.passed,
            'checked': scan.checked,
            'failures': failures,
            'max_value': max_value,
        })


class ConvergeRowSerializer(serializers.Serializer):
    x = serializers.IntegerField()
    ratio_h = SignificantFloatField(allow_null=True)
    ratio_M = SignificantFloatField()


class FastRowSerializer(serializers.Serializer):
    x = serializers.IntegerField()
    M = serializers.IntegerField()
    g = SignificantFloatField()
    g_err = ErrorBoundField()
    crossover = serializers.IntegerField()
    distinct_arguments = serializers.IntegerField()


class BenchRowSerializer(serializers.Serializer):
    benchmark = serializers.CharField()
    parameter = serializers.IntegerField()
    seconds = SignificantFloatField()
