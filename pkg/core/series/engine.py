"""
Evaluation of the level-l series for Euler's constant and for eta(s).

For l >= 2:

    gamma = H_{2^{l-1}-1} - (l-1) log 2
            + sum_{m>=1} (-1)^{m-1} e_m/(m+1) sum_{2^{l-1} <= n < 2^l} n^{-(m+1)}

    eta(s) = (2^s-2)/2^s sum_{0<n<2^{l-1}} n^{-s} + sum_{block} n^{-s}
             + sum_{m>=1} (-1)^m (s)_m/m! c_m(s) sum_{block} n^{-(s+m)}

Terms are gathered first and folded in ascending m, block elements in
ascending n, so the result is bit-identical however the terms were produced.

The e_m come from the exact table while the plan is short enough, and from a
fixed-point run of the same recurrence otherwise. The fixed-point recurrence
cannot amplify errors: its divisor 2^{m+1} - 2 equals the binomial mass
sum_{j=1..m} C(m+1, j), so each step adds at most one ulp to the largest
error so far.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction

from .exact import (
    PASCAL,
    binomial,
    c_exact,
    default_cm_table,
    e_exact,
    harmonic,
    pochhammer_ratio,
)
from .mpfixed import (
    FixedPoint,
    PrecisionCtx,
    fx_add,
    fx_div_int,
    fx_from_rational,
    fx_inv_pow,
    fx_log2,
    fx_mul,
    fx_scale,
    fx_sub,
)
from .planner import SeriesPlan

logger = logging.getLogger(__name__)

EXACT_TRACK_CAP = 512
PROGRESS_EVERY = 100


@dataclass(frozen=True)
class GammaApproximation:
    """Series value, its rigorous total error bound, and how it was obtained."""

    value: FixedPoint
    total_error_bound: Fraction
    plan: SeriesPlan
    terms_used: int
    last_term: Fraction = Fraction(0)
    em_track: str = "exact"

    @property
    def rounding_error_bound(self):
        return self.value.error_bound()


def block_power_sum(level, k, ctx):
    """sum_{2^{l-1} <= n < 2^l} n^-k, ascending n, error <= 2^{l-1} ulps."""
    if level < 2:
        raise ValueError(f"level must be >= 2, got {level}")
    start = 1 << (level - 1)
    total = FixedPoint(0, ctx)
    for n in range(start, 2 * start):
        total = fx_add(total, fx_inv_pow(n, k, ctx))
    return total


def em_fixed(m_max, ctx, pascal=None):
    """
    e_0..e_{m_max} by the recurrence run in fixed point.

    Entry m carries err <= max_{j<m} err_j + 1 ulp (so err_m <= m).
    """
    if m_max < 0:
        raise ValueError(f"m_max must be >= 0, got {m_max}")
    pascal = pascal or PASCAL
    one = ctx.one
    mantissas = [0]
    errs = [0]

    rows = pascal.iter_rows(m_max + 1)
    next(rows)
    next(rows)
    for m in range(1, m_max + 1):
        row = next(rows)
        power = 1 << (m + 1)
        total = power * one + sum(row[j] * mantissas[m - j] for j in range(1, m + 1))
        quotient, remainder = divmod(total, power - 2)
        mantissas.append(quotient)
        errs.append(errs[-1] + (remainder != 0))
        if m % PROGRESS_EVERY == 0:
            logger.debug(f"em_fixed: {m}/{m_max} coefficients")

    ctx.charge(m_max)
    return [FixedPoint(mantissa, ctx, err) for mantissa, err in zip(mantissas, errs)]


def series_coefficients(terms, ctx, exact_track_cap=EXACT_TRACK_CAP, table=None):
    """
    e_m/(m+1) for m = 1..terms, and which e_m track produced them.
    """
    if terms <= exact_track_cap:
        coefficients = [
            fx_from_rational(e_exact(m, table) / (m + 1), ctx)
            for m in range(1, terms + 1)
        ]
        return coefficients, "exact"

    logger.info(
        f"{terms} terms exceed the exact track cap {exact_track_cap}; "
        f"using fixed-point e_m"
    )
    fixed = em_fixed(terms, ctx)
    coefficients = [fx_div_int(fixed[m], m + 1) for m in range(1, terms + 1)]
    return coefficients, "fixed"


def gamma_series(plan, exact_track_cap=EXACT_TRACK_CAP, table=None):
    """
    Evaluate the plan's partial sum of the level-l series for gamma.

    Args:
        plan: SeriesPlan fixing level, term count and fractional bits
        exact_track_cap: Largest term count evaluated with exact e_m
        table: Optional EmTable (defaults to the shared one)

    Returns:
        GammaApproximation whose total bound is the tail bound plus the
        tracked rounding error
    """
    level, terms = plan.level, plan.terms
    if level < 2:
        raise ValueError(f"level must be >= 2, got {level}")
    ctx = PrecisionCtx(plan.frac_bits)

    logger.info(
        f"Evaluating gamma series: level={level}, terms={terms}, "
        f"frac_bits={plan.frac_bits}"
    )

    # H_{2^(l-1)-1} - (l-1) log 2
    head = fx_from_rational(harmonic((1 << (level - 1)) - 1), ctx)
    value = fx_sub(head, fx_scale(fx_log2(ctx), level - 1))

    coefficients, track = series_coefficients(terms, ctx, exact_track_cap, table)

    # Terms first, then summed in increasing m
    summands = []
    for m, coefficient in enumerate(coefficients, start=1):
        summands.append(fx_mul(coefficient, block_power_sum(level, m + 1, ctx)))
        if m % PROGRESS_EVERY == 0:
            logger.debug(f"gamma_series: {m}/{terms} terms")

    # Signs alternate starting with +
    for m, summand in enumerate(summands, start=1):
        value = fx_add(value, summand) if m % 2 else fx_sub(value, summand)

    last_term = summands[-1].as_fraction() if summands else Fraction(0)
    approximation = GammaApproximation(
        value=value,
        total_error_bound=plan.tail_bound + value.error_bound(),
        plan=plan,
        terms_used=terms,
        last_term=last_term,
        em_track=track,
    )
    logger.info(
        f"Gamma series done: {ctx.op_budget} inexact ops, "
        f"rounding error {value.err} ulps"
    )
    return approximation


def eta_level_series(s, level, terms, ctx):
    """
    eta(s) from the level-l representation with M correction terms; c_m(s)
    and (s)_m/m! are exact rationals.
    """
    if s < 1:
        raise ValueError(f"eta_level_series needs integer s >= 1, got s={s}")
    if level < 2:
        raise ValueError(f"level must be >= 2, got {level}")
    if terms < 0:
        raise ValueError(f"terms must be >= 0, got {terms}")

    start = 1 << (level - 1)
    prefix = sum((Fraction(1, n ** s) for n in range(1, start)), Fraction(0))
    head = Fraction((1 << s) - 2, 1 << s) * prefix
    value = fx_add(fx_from_rational(head, ctx), block_power_sum(level, s, ctx))

    table = default_cm_table(s)
    for m in range(1, terms + 1):
        coefficient = fx_from_rational(
            pochhammer_ratio(s, m) * c_exact(s, m, table), ctx
        )
        summand = fx_mul(coefficient, block_power_sum(level, s + m, ctx))
        value = fx_add(value, summand) if m % 2 == 0 else fx_sub(value, summand)
    return value


def eta_tail_bound(s, level, terms):
    """
    Rational bound on the omitted tail of the eta level series.

    Uses c_m(s) <= c_m(1) = 1/(m+1) for s >= 1 and
    sum_{block} n^-k <= 2^{(l-1)(1-k)}; once the ratio of successive
    majorants is below one the rest is summed as a geometric series.
    """
    if s < 1:
        raise ValueError(f"eta_tail_bound needs s >= 1, got s={s}")
    block = 1 << (level - 1)
    total = Fraction(0)
    m = terms + 1
    while True:
        majorant = Fraction(binomial(s + m - 1, m), (m + 1) * block ** (s + m - 1))
        ratio = max(Fraction(s + m, m + 2), Fraction(1)) / block
        if ratio < 1:
            return total + majorant / (1 - ratio)
        total += majorant
        m += 1
