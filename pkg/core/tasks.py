from celery import shared_task
from celery.utils.log import get_task_logger
from django.conf import settings
from django.core.cache import cache
from functools import wraps
import time

from core.reports import approximation_payload
from core.series import (
    PlanError,
    auto_level,
    covered_digits,
    gamma_series,
    plan_for_digits,
    plan_for_terms,
)

logger = get_task_logger(__name__)


def task_lock(timeout=60 * 10):
    """
    Decorator that prevents the same request from being computed twice at once.
    Uses Django's cache to create a lock based on the task name and arguments.

    Args:
        timeout: Lock timeout in seconds (default: 10 minutes)
    """

    def decorator(func):
        @wraps(func)
        def wrapper(*args, **kwargs):
            task_name = func.__name__
            lock_args = [str(arg) for arg in args if isinstance(arg, (int, float, str))]
            lock_kwargs = [
                f"{key}:{value}"
                for key, value in sorted(kwargs.items())
                if isinstance(value, (int, float, str))
            ]
            lock_key = (
                f"task_lock:{task_name}:{':'.join(lock_args)}:{':'.join(lock_kwargs)}"
            )

            if not cache.add(lock_key, "locked", timeout):
                logger.info(
                    f"Task {task_name} with args {args} and kwargs {kwargs} is already running. Skipping."
                )
                return None
            try:
                return func(*args, **kwargs)
            finally:
                cache.delete(lock_key)

        return wrapper

    return decorator


def check_caps(level=None, terms=None, digits=None):
    """
    Raise PlanError when a request exceeds the configured resource caps.

    Args:
        level: Series level; the dyadic block has 2^(level-1) elements
        terms: Number of correction terms
        digits: Decimal digits requested or printed
    """
    if digits is not None and digits > settings.GAMMA_MAX_DIGITS:
        raise PlanError(
            f"{digits} digits requested, cap is {settings.GAMMA_MAX_DIGITS}"
        )
    if level is not None and level > settings.GAMMA_MAX_LEVEL:
        raise PlanError(
            f"level {level} requested, cap is {settings.GAMMA_MAX_LEVEL}"
        )
    if terms is not None and terms > settings.GAMMA_MAX_TERMS:
        raise PlanError(
            f"{terms} terms requested, cap is {settings.GAMMA_MAX_TERMS}"
        )
    if level is not None and terms is not None:
        # Every term walks the whole block once
        block_terms = max(terms, 1) * (1 << (level - 1))
        if block_terms > settings.GAMMA_MAX_BLOCK_TERMS:
            raise PlanError(
                f"{terms} terms at level {level} evaluate {block_terms} block "
                f"elements, cap is {settings.GAMMA_MAX_BLOCK_TERMS}"
            )


def build_plan(digits=None, level=None, terms=None, cost=None, digits_shown=None):
    """
    Plan a request from either a digit target or a forced (level, terms) pair,
    enforcing the configured resource caps.

    Args:
        digits: Decimal digits requested (digit mode)
        level: Level override; required with ``terms``
        terms: Forced term count (partial-sum mode)
        cost: Cost exponent for the automatic level choice (digit mode only)
        digits_shown: Digits printed for a partial sum (partial-sum mode only)

    Returns:
        SeriesPlan

    Raises:
        ValueError: inconsistent arguments
        PlanError: a cap is exceeded
    """
    if terms is not None:
        if level is None:
            raise ValueError("a forced term count needs a level")
        if digits is not None:
            raise ValueError("digits and terms are mutually exclusive")
        if cost is not None:
            raise ValueError("cost only applies to digit requests")
        check_caps(level=level, terms=terms, digits=digits_shown)
        return plan_for_terms(level, terms, digits_shown, guard_bits=settings.GAMMA_GUARD_BITS)

    if digits is None:
        raise ValueError("one of digits or terms is required")
    if digits_shown is not None:
        raise ValueError("digits_shown only applies to forced term counts")
    check_caps(level=level, digits=digits)
    if level is None:
        level = auto_level(digits, settings.GAMMA_DEFAULT_COST if cost is None else cost)
    plan = plan_for_digits(
        digits,
        level,
        guard_bits=settings.GAMMA_GUARD_BITS,
        max_terms=settings.GAMMA_MAX_TERMS,
    )
    check_caps(level=plan.level, terms=plan.terms)
    return plan


@shared_task
@task_lock(timeout=60 * 30)
def compute_gamma_digits(digits=None, level=None, cost=None, terms=None, digits_shown=None):
    """
    Evaluate gamma for a digit request (or a forced partial sum).

    Args:
        digits: Decimal digits requested; plans level and term count
        level: Level override (required together with ``terms``)
        cost: Cost exponent for the automatic level choice
        terms: Forced term count, for partial sums
        digits_shown: Digits printed for a forced partial sum

    Returns:
        dict: {
            'value': str, 'error_bound': str, 'level': int, 'terms': int,
            'frac_bits': int, 'elapsed_ms': float, 'digits_certain': bool,
            'em_track': str
        }
    """
    start_time = time.perf_counter()
    plan = build_plan(
        digits=digits, level=level, terms=terms, cost=cost, digits_shown=digits_shown
    )

    approximation = gamma_series(plan, exact_track_cap=settings.GAMMA_EXACT_TRACK_CAP)

    if terms is not None:
        shown = digits_shown or max(1, covered_digits(approximation.total_error_bound))
    else:
        shown = digits
    elapsed_ms = round((time.perf_counter() - start_time) * 1000, 3)
    payload = approximation_payload(approximation, shown, elapsed_ms)

    if terms is None and not payload["digits_certain"]:
        logger.warning(
            f"Last printed digit of {shown} is not certified by the error bound "
            f"{payload['error_bound']}"
        )
    logger.info(
        f"Gamma computed: level={plan.level}, terms={plan.terms}, "
        f"{shown} digits in {elapsed_ms:.1f} ms"
    )
    return payload
