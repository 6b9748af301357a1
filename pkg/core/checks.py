"""
Verification runs behind ``manage.py verify``.

Each runner returns a CheckResult with a verdict and human-readable detail
lines carrying the margins; the command prints them and exits 1 if any
runner failed.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction

from core.reports import format_magnitude
from core.series import (
    PrecisionCtx,
    cross_level_agreement,
    e_exact,
    em_derivative_oracle,
    encloses_reference,
    eta_level_series,
    eta_tail_bound,
    fx_log2,
    verify_bounds,
)

logger = logging.getLogger(__name__)

DEFAULT_BOUNDS_M = 300
DEFAULT_ORACLE_M = 10
DEFAULT_CROSS_LEVEL_DIGITS = 50

ORACLE_STEP = Fraction(1, 1 << 20)
ORACLE_TOLERANCE = Fraction(1, 10 ** 7)
ORACLE_FRAC_BITS = 256

ETA_TERMS = 40
ETA_FRAC_BITS = 192


@dataclass
class CheckResult:
    name: str
    passed: bool
    details: list = field(default_factory=list)


def run_bound_checks(m_max=DEFAULT_BOUNDS_M):
    report = verify_bounds(0, m_max)
    failures = [check.m for check in report if not check.passed]
    sharp = [check.sharp_margin for check in report if check.sharp_margin is not None]
    details = [
        f"m=0..{m_max}: {len(report) - len(failures)}/{len(report)} passed",
        f"min lower margin={format_magnitude(min(c.lower_margin for c in report))}",
        f"min upper margin={format_magnitude(min(c.upper_margin for c in report))}",
    ]
    if sharp:
        details.append(f"min sharp margin={format_magnitude(min(sharp))}")
    if failures:
        details.append(f"failed at m={failures}")
    return CheckResult("bounds", not failures, details)


def run_oracle_checks(m_max=DEFAULT_ORACLE_M, h=ORACLE_STEP):
    ctx = PrecisionCtx(ORACLE_FRAC_BITS)
    details = []
    worst = Fraction(0)
    for m in range(1, m_max + 1):
        estimate = em_derivative_oracle(m, h, ctx)
        deviation = abs(estimate.as_fraction() - e_exact(m))
        worst = max(worst, deviation)
        details.append(f"m={m}: deviation={format_magnitude(deviation)}")
    passed = worst < ORACLE_TOLERANCE
    details.append(
        f"max deviation={format_magnitude(worst)} "
        f"(limit {format_magnitude(ORACLE_TOLERANCE)})"
    )
    return CheckResult("oracle", passed, details)


def run_cross_level_checks(digits=DEFAULT_CROSS_LEVEL_DIGITS, exact_track_cap=None, max_terms=None):
    kwargs = {"max_terms": max_terms}
    if exact_track_cap is not None:
        kwargs["exact_track_cap"] = exact_track_cap
    approximations, agreements = cross_level_agreement(digits, **kwargs)

    details = []
    passed = True
    for level, approximation in sorted(approximations.items()):
        enclosed = encloses_reference(approximation)
        passed = passed and enclosed
        details.append(
            f"level={level}: terms={approximation.terms_used} "
            f"bound={format_magnitude(approximation.total_error_bound)} "
            f"reference {'enclosed' if enclosed else 'NOT enclosed'}"
        )
    for agreement in agreements:
        if not agreement.agrees:
            passed = False
            details.append(
                f"levels {agreement.level_a} and {agreement.level_b} disagree: "
                f"difference={format_magnitude(agreement.difference)} "
                f"allowed={format_magnitude(agreement.allowed)}"
            )
    worst = max(
        (a.difference / a.allowed for a in agreements if a.allowed), default=Fraction(0)
    )
    details.append(
        f"{len(agreements)} level pairs, worst difference/allowed="
        f"{format_magnitude(worst)}"
    )
    return CheckResult("cross-level", passed, details)


def eta_bound(s, level, terms, value):
    return eta_tail_bound(s, level, terms) + value.error_bound()


def run_eta_checks(terms=ETA_TERMS):
    """eta(1) = log 2 at levels 2..4, and eta(2) consistent across levels 2 and 4."""
    ctx = PrecisionCtx(ETA_FRAC_BITS)
    log2 = fx_log2(ctx)
    details = []
    passed = True

    for level in (2, 3, 4):
        value = eta_level_series(1, level, terms, ctx)
        difference = abs(value.as_fraction() - log2.as_fraction())
        allowed = eta_bound(1, level, terms, value) + log2.error_bound()
        ok = difference <= allowed
        passed = passed and ok
        details.append(
            f"eta(1) level={level}: |eta - log 2|={format_magnitude(difference)} "
            f"allowed={format_magnitude(allowed)} {'ok' if ok else 'FAIL'}"
        )

    first = eta_level_series(2, 2, terms, ctx)
    second = eta_level_series(2, 4, terms, ctx)
    difference = abs(first.as_fraction() - second.as_fraction())
    allowed = eta_bound(2, 2, terms, first) + eta_bound(2, 4, terms, second)
    ok = difference <= allowed
    passed = passed and ok
    details.append(
        f"eta(2) levels 2/4: difference={format_magnitude(difference)} "
        f"allowed={format_magnitude(allowed)} {'ok' if ok else 'FAIL'}"
    )
    return CheckResult("eta", passed, details)
