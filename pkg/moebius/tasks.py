import logging

from celery import shared_task

from .bounds import evaluate_block_bound
from .summatory import PrefixState
from .summatory import block_totals as sieve_block_totals

logger = logging.getLogger(__name__)


@shared_task(name='moebius.tasks.block_totals')
def block_totals(lo, hi, block_size=None):
    """Running-sum deltas of [lo, hi] as a PrefixState payload."""
    try:
        delta = sieve_block_totals(lo, hi, block_size)
        logger.debug(f"Totals for [{lo}, {hi}]: M delta {delta.m}")
        return delta.to_payload()
    except Exception as e:
        logger.error(f"Failed to total block [{lo}, {hi}]: {str(e)}")
        raise


@shared_task(name='moebius.tasks.scan_bound_block')
def scan_bound_block(bound, lo, hi, start, params, block_size=None):
    """Partial BoundReport payload for one chunk, scanned from the state at lo - 1."""
    try:
        report = evaluate_block_bound(bound, lo, hi, PrefixState.from_payload(start), params, block_size)
        if not report.passed:
            logger.warning(f"{bound} failed {report.violation_count} times on [{lo}, {hi}]")
        return report.to_payload()
    except Exception as e:
        logger.error(f"Failed to scan {bound} on [{lo}, {hi}]: {str(e)}")
        raise
