"""
Subcommand bodies for ``manage.py moebius``.

Each subcommand renders its whole CSV into memory first; ``run`` then writes it
in one piece to ``--out`` or standard output and maps the verdict to an exit
status: 0 all checks passed, 1 a check failed or was indeterminate, 2 usage or
I/O error.
"""

import csv
import io
import logging
import math
import sys
import time

from .bounds import (
    check_euler_gamma,
    check_g_bound,
    check_harmonic_bound,
    check_mangoldt_bound,
    check_tail_bound_range,
    check_tail_constant,
    check_theta_bounds,
    check_variation_bound,
    f_convergence,
    h_convergence,
    m_over_x_convergence,
    mertens_abel_scan,
)
from .conf import exact_cutoff, moebius_setting
from .fast import MertensEvaluator, default_crossover, g_recursive, mertens_recursion_scan
from .identities import CERTIFIED_CHECKS, divisor_sum_scan, gram_identity_scan, scan_identity
from .numeric import CertifiedFloat
from .serializers import (
    BenchRowSerializer,
    ConvergeRowSerializer,
    FastRowSerializer,
    TableRowSerializer,
    VerifyRowSerializer,
)
from .sieve import moebius_table
from .summatory import series_scan

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2

BENCH_BLOCK_SIZES = (2 ** 14, 2 ** 16, 2 ** 18, 2 ** 20)
BENCH_CROSSOVER_EXPONENTS = (1 / 2, 3 / 5, 2 / 3, 3 / 4)


class CsvOutput:
    def __init__(self, fields):
        self.buffer = io.StringIO()
        self.writer = csv.writer(self.buffer, lineterminator='\n')
        self.fields = fields
        self.writer.writerow(fields)

    def row(self, serializer):
        data = serializer.data
        self.writer.writerow(['' if data[name] is None else data[name] for name in self.fields])

    def line(self, text):
        self.buffer.write(text + '\n')

    def getvalue(self):
        return self.buffer.getvalue()


def run_table(config):
    output = CsvOutput(list(TableRowSerializer().fields))
    for record in series_scan(config.limit, config.stride, config.blocksize):
        output.row(TableRowSerializer.from_record(record))
    return output, True


def verify_scans(config):
    """Every identity and bound scan up to the limit.

    Exact scans stop at the cutoff, per-x scans at POINTWISE_SCAN_LIMIT.
    """
    limit = config.limit
    exact_hi = min(limit, exact_cutoff(config.cutoff))
    yield divisor_sum_scan(1, exact_hi)
    yield gram_identity_scan(1, exact_hi, config.cutoff)
    yield mertens_abel_scan(1, exact_hi, config.cutoff)
    for name in CERTIFIED_CHECKS:
        yield scan_identity(name, 1, exact_hi, block_size=config.blocksize)
    yield check_euler_gamma()
    yield check_tail_constant()
    yield check_g_bound(1, limit, cutoff=config.cutoff, block_size=config.blocksize)
    yield check_mangoldt_bound(1, limit, block_size=config.blocksize)
    yield check_theta_bounds(1, limit, block_size=config.blocksize)
    yield check_harmonic_bound(1, limit, block_size=config.blocksize)
    pointwise_hi = min(limit, int(moebius_setting('POINTWISE_SCAN_LIMIT')))
    yield check_tail_bound_range(1, pointwise_hi, block_size=config.blocksize)
    yield check_variation_bound(1, pointwise_hi, cutoff=config.cutoff, block_size=config.blocksize)
    yield mertens_recursion_scan(
        1, min(limit, int(moebius_setting('RECURSION_SCAN_LIMIT'))),
        samples=int(moebius_setting('RECURSION_SAMPLES')), sample_limit=limit,
        crossover=config.crossover, block_size=config.blocksize,
    )


def run_verify(config):
    output = CsvOutput(list(VerifyRowSerializer().fields))
    passed = True
    for scan in verify_scans(config):
        output.row(VerifyRowSerializer.from_scan(scan))
        if not scan.passed:
            logger.error(f"Check {scan.name} failed on [{scan.lo}, {scan.hi}]")
            passed = False
    return output, passed


def _footer_value(value):
    return 'none' if value is None else str(value)


def run_converge(config):
    h = h_convergence(config.delta, config.limit, config.stride, config.blocksize)
    m = m_over_x_convergence(config.delta, config.limit, config.stride, config.cutoff, config.blocksize)
    f = f_convergence(config.delta, config.limit, config.stride, block_size=config.blocksize)

    ratios_h = dict(h.samples)
    output = CsvOutput(list(ConvergeRowSerializer().fields))
    for x, ratio_m in m.samples:
        ratio_h = ratios_h.get(x)
        output.row(ConvergeRowSerializer({
            'x': x,
            'ratio_h': None if ratio_h is None else ratio_h.value,
            'ratio_M': ratio_m.value,
        }))
    output.line(f"G={_footer_value(h.G)},xi_h={_footer_value(h.xi)},xi_M={_footer_value(m.xi)}")
    passed = h.passed and m.passed and f.passed
    return output, passed


def run_fast(config):
    crossover = config.crossover or default_crossover(config.limit)
    evaluator = MertensEvaluator(min(crossover, config.limit), config.blocksize)
    output = CsvOutput(list(FastRowSerializer().fields))
    for x in range(config.stride, config.limit + 1, config.stride):
        k = min(config.crossover or default_crossover(x), x)
        memo = evaluator.memo(x, k)
        g = g_recursive(x, crossover=k, cutoff=config.cutoff, block_size=config.blocksize)
        if not isinstance(g, CertifiedFloat):
            g = CertifiedFloat.from_rational(g)
        output.row(FastRowSerializer({
            'x': x,
            'M': memo[1],
            'g': g.value,
            'g_err': g.err,
            'crossover': k,
            'distinct_arguments': memo.distinct_arguments,
        }))
    return output, True


def _timed(call):
    start = time.perf_counter()
    call()
    return time.perf_counter() - start


def run_bench(config):
    output = CsvOutput(list(BenchRowSerializer().fields))
    for size in BENCH_BLOCK_SIZES:
        seconds = _timed(lambda: moebius_table(config.limit, size))
        logger.info(f"Sieve to {config.limit} with blocks of {size}: {seconds:.3f}s")
        output.row(BenchRowSerializer({'benchmark': 'sieve_blocksize', 'parameter': size, 'seconds': seconds}))
    crossovers = [config.crossover] if config.crossover else sorted({
        max(1, math.ceil(config.limit ** exponent)) for exponent in BENCH_CROSSOVER_EXPONENTS
    })
    for k in crossovers:
        k = min(k, config.limit)
        seconds = _timed(lambda: MertensEvaluator(k, config.blocksize)(config.limit, k))
        logger.info(f"M({config.limit}) with K={k}: {seconds:.3f}s")
        output.row(BenchRowSerializer({'benchmark': 'm_recursive_crossover', 'parameter': k, 'seconds': seconds}))
    return output, True


SUBCOMMANDS = {
    'table': run_table,
    'verify': run_verify,
    'converge': run_converge,
    'fast': run_fast,
    'bench': run_bench,
}


def write_output(text, out=None, stdout=None):
    if out:
        with open(out, 'w', encoding='utf-8', newline='') as handle:
            handle.write(text)
    else:
        (stdout or sys.stdout).write(text)


def run(config, stdout=None):
    logger.info(f"Running {config.subcommand} up to {config.limit} (stride {config.stride})")
    output, passed = SUBCOMMANDS[config.subcommand](config)
    try:
        write_output(output.getvalue(), config.out, stdout)
    except OSError as e:
        logger.error(f"Cannot write {config.out}: {str(e)}")
        return EXIT_USAGE
    if not passed:
        logger.error(f"{config.subcommand} finished with failed checks")
        return EXIT_FAILED
    return EXIT_OK
