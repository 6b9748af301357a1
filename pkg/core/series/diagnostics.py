"""
Diagnostics for the e_m coefficients and for computed approximations.

- delta_m = e_m - H_{m+1}/log 2 and its running maximum mu_m
- interval verification of the two-sided bounds
      (H_{m+1} - 1)/log 2 <= e_m < H_{m+1}/log 2 - 0.161        (m >= 0)
      H_{m+1}/log 2 - 0.35 < e_m < H_{m+1}/log 2 - 0.31         (m >= 2)
- the independent derivative oracle e_m = -(m+1) c_m'(1) / log 2, with
  c_m(s) run in fixed point at s = 1 +- h
- enclosure and cross-level consistency checks of gamma approximations
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Optional

from .engine import EXACT_TRACK_CAP, gamma_series
from .exact import PASCAL, e_exact, harmonic
from .mpfixed import (
    FixedPoint,
    fx_add,
    fx_div,
    fx_div_int,
    fx_from_int,
    fx_from_rational,
    fx_log2,
    fx_pow2_real,
    fx_scale,
    fx_shift,
    fx_sub,
    inverse_log2_enclosure,
)
from .planner import plan_for_digits
from .reference import GAMMA_REFERENCE

logger = logging.getLogger(__name__)

UPPER_GAP = Fraction(161, 1000)
SHARP_LOWER_GAP = Fraction(35, 100)
SHARP_UPPER_GAP = Fraction(31, 100)

MIN_ORACLE_STEP = Fraction(1, 1 << 60)
MAX_ORACLE_STEP = Fraction(1, 1 << 10)


@dataclass(frozen=True)
class DeltaRecord:
    m: int
    delta: FixedPoint
    error_bound: Fraction


@dataclass(frozen=True)
class BoundCheck:
    """
    Verdicts for one m. Margins are certified lower bounds on the distance
    to each inequality (positive means satisfied with room to spare).
    """

    m: int
    lower_ok: bool
    upper_ok: bool
    lower_margin: Fraction
    upper_margin: Fraction
    sharp_ok: Optional[bool] = None
    sharp_margin: Optional[Fraction] = None

    @property
    def passed(self):
        return self.lower_ok and self.upper_ok and self.sharp_ok is not False


@dataclass(frozen=True)
class LevelAgreement:
    level_a: int
    level_b: int
    difference: Fraction
    allowed: Fraction

    @property
    def agrees(self):
        return self.difference <= self.allowed


def delta(m, ctx, table=None):
    """delta_m = e_m - H_{m+1}/log 2 with its composed error bound."""
    if m < 0:
        raise ValueError(f"m must be >= 0, got {m}")
    e_m = fx_from_rational(e_exact(m, table), ctx)
    h = fx_from_rational(harmonic(m + 1), ctx)
    value = fx_sub(e_m, fx_div(h, fx_log2(ctx)))
    return DeltaRecord(m=m, delta=value, error_bound=value.error_bound())


def running_max_delta(m_max, ctx, table=None):
    """
    Pairs (delta_m, mu_m) for m = 0..m_max, where mu_m = max_{0<=j<=m} delta_j
    is returned as the DeltaRecord attaining it.
    """
    result = []
    best = None
    for m in range(m_max + 1):
        record = delta(m, ctx, table)
        if best is None or record.delta.as_fraction() > best.delta.as_fraction():
            best = record
        result.append((record, best))
    return result


def verify_bounds(m_lo, m_hi, table=None):
    """
    Check the coefficient bounds for m_lo <= m <= m_hi with exact e_m, exact H_{m+1}
    and a rational enclosure of 1/log 2. A verdict is "pass" only when it
    holds for every value in the enclosure.

    Args:
        m_lo: First index checked, >= 0
        m_hi: Last index checked
        table: Optional EmTable (defaults to the shared one)

    Returns:
        list[BoundCheck], one per m
    """
    if m_lo < 0 or m_hi < m_lo:
        raise ValueError(f"need 0 <= m_lo <= m_hi, got {m_lo}..{m_hi}")
    inv_lo, inv_hi = inverse_log2_enclosure()

    report = []
    for m in range(m_lo, m_hi + 1):
        e_m = e_exact(m, table)
        h = harmonic(m + 1)

        # Worst end of the enclosure for each side
        lower_margin = e_m - (h - 1) * inv_hi
        upper_margin = h * inv_lo - UPPER_GAP - e_m
        sharp_ok = sharp_margin = None
        # The tighter band only holds from m = 2 on
        if m >= 2:
            sharp_margin = min(
                e_m - (h * inv_hi - SHARP_LOWER_GAP),
                (h * inv_lo - SHARP_UPPER_GAP) - e_m,
            )
            sharp_ok = sharp_margin > 0

        check = BoundCheck(
            m=m,
            lower_ok=lower_margin >= 0,
            upper_ok=upper_margin > 0,
            lower_margin=lower_margin,
            upper_margin=upper_margin,
            sharp_ok=sharp_ok,
            sharp_margin=sharp_margin,
        )
        if not check.passed:
            logger.warning(f"Bound check failed at m={m}: {check}")
        report.append(check)

    logger.info(
        f"Verified bounds for m={m_lo}..{m_hi}: "
        f"{sum(c.passed for c in report)}/{len(report)} passed"
    )
    return report


def _cm_fixed(m, s, ctx):
    """c_m(s) for real s near 1, with 2^{k+s} = 2^k * 2^s in fixed point."""
    two_s = fx_pow2_real(s, ctx)
    two = fx_from_int(2, ctx)
    values = [fx_from_int(1, ctx)]
    for k in range(1, m + 1):
        row = PASCAL.row(k)
        total = FixedPoint(0, ctx)
        for j in range(1, k + 1):
            total = fx_add(total, fx_scale(values[k - j], row[j]))
        values.append(fx_div(total, fx_sub(fx_shift(two_s, k), two)))
    return values[m]


def _is_power_of_two(n):
    return n > 0 and n & (n - 1) == 0


def em_derivative_oracle(m, h, ctx):
    """
    e_m = -(m+1) c_m'(1) / log 2 with c_m'(1) by the central difference
    (c_m(1+h) - c_m(1-h)) / 2h. Truncation error is O(h^2).
    """
    h = Fraction(h)
    if m < 1:
        raise ValueError(f"m must be >= 1, got {m}")
    if not _is_power_of_two(h.denominator):
        raise ValueError(f"h must be a dyadic rational, got {h}")
    if not MIN_ORACLE_STEP <= h <= MAX_ORACLE_STEP:
        raise ValueError(f"h must lie in [2^-60, 2^-10], got {h}")
    step_bits = h.denominator.bit_length() - h.numerator.bit_length() + 1
    if ctx.frac_bits < 4 * step_bits:
        raise ValueError(
            f"h={h} needs at least {4 * step_bits} fractional bits, "
            f"context has {ctx.frac_bits}"
        )

    difference = fx_sub(_cm_fixed(m, 1 + h, ctx), _cm_fixed(m, 1 - h, ctx))
    slope = fx_div_int(fx_scale(difference, h.denominator), 2 * h.numerator)
    return fx_div(fx_scale(slope, -(m + 1)), fx_log2(ctx))


def encloses_reference(approximation, reference=GAMMA_REFERENCE):
    """
    False when [value - bound, value + bound] cannot contain gamma given the
    embedded digits (gamma lies in [ref, ref + 10^-27)).
    """
    ref_lo, ref_hi = reference.interval()
    value = approximation.value.as_fraction()
    bound = approximation.total_error_bound
    return value - bound < ref_hi and value + bound >= ref_lo


def digits_certain(approximation, digits):
    """Whether every real within the bound truncates to the same D digits."""
    value = approximation.value.as_fraction()
    bound = approximation.total_error_bound
    lo, hi = value - bound, value + bound
    if lo < 0 < hi:
        return False
    scale = 10 ** digits
    return int(lo * scale) == int(hi * scale)


def cross_level_agreement(
    digits,
    levels=range(2, 8),
    exact_track_cap=EXACT_TRACK_CAP,
    max_terms=None,
):
    """Evaluate every level at D digits and compare all pairs within their bounds."""
    approximations = {
        level: gamma_series(
            plan_for_digits(digits, level, max_terms=max_terms),
            exact_track_cap=exact_track_cap,
        )
        for level in levels
    }
    results = []
    for a, b in combinations(sorted(approximations), 2):
        first, second = approximations[a], approximations[b]
        results.append(
            LevelAgreement(
                level_a=a,
                level_b=b,
                difference=abs(first.value.as_fraction() - second.value.as_fraction()),
                allowed=first.total_error_bound + second.total_error_bound,
            )
        )
    return approximations, results
