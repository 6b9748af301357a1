"""
Planning (level, term count, working precision) for a digit request.

The omitted tail after M terms of the level-l series is bounded with the
majorant e_m < H_{m+1} / log 2 and the dyadic block estimate
sum_{2^{l-1} <= n < 2^l} n^{-(m+1)} <= 2^{-(l-1) m}:

    B(l, M) = H_{M+2} / ((M+2) log 2) * 2^{-(l-1)(M+1)} / (1 - 2^{-(l-1)})

All bounds are exact rationals, evaluated with the upper end of a rational
enclosure of 1/log 2, so they only ever err upward.

Level choice follows the cost model: going from level l-1 to l cuts the term
count by l/(l-1) but doubles the block length; with a per-term cost growing
like (term count)^c the step pays off only while (l/(l-1))^c > 2.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np

from .exact import harmonic
from .exceptions import PlanError
from .mpfixed import inverse_log2_enclosure

logger = logging.getLogger(__name__)

GUARD_BITS = 64
MIN_LEVEL = 2
MAX_LEVEL = 7


@dataclass(frozen=True)
class SeriesPlan:
    """Level, term count and fractional bits, with the bounds they guarantee."""

    level: int
    terms: int
    frac_bits: int
    tail_bound: Fraction
    rounding_bound: Fraction
    digits: Optional[int] = None

    @property
    def block_length(self):
        return 1 << (self.level - 1)

    @property
    def total_bound(self):
        return self.tail_bound + self.rounding_bound


def _check_level(level):
    if level < MIN_LEVEL:
        raise ValueError(f"level must be >= {MIN_LEVEL}, got {level}")


def tail_bound(level, terms):
    """Rigorous upper bound on |sum_{m > M} t_m| for the level-l gamma series."""
    _check_level(level)
    if terms < 0:
        raise ValueError(f"terms must be >= 0, got {terms}")
    _, inv_log2_hi = inverse_log2_enclosure()
    block = 1 << (level - 1)
    first = harmonic(terms + 2) * inv_log2_hi / ((terms + 2) * block ** (terms + 1))
    return first * Fraction(block, block - 1)


def predicted_rounding_ulps(level, terms):
    """
    A priori ulp budget for evaluating the series.

    Each term is budgeted 4 * 2^(l-1) + 8 ulps, covering its block sum,
    coefficient and product with room to spare. The head (harmonic prefix
    and (l-1) log 2) is budgeted 8l + 64 ulps.
    """
    block = 1 << (level - 1)
    return terms * (4 * block + 8) + 8 * level + 64


def frac_bits_for(digits, level, terms, guard_bits=GUARD_BITS):
    """F = ceil(D log2 10) + guard + ceil(log2(M 2^{l-1} + 16))."""
    decimal_bits = (10 ** digits).bit_length()
    op_bits = (terms * (1 << (level - 1)) + 16 - 1).bit_length()
    return decimal_bits + guard_bits + op_bits


def covered_digits(bound):
    """Largest d >= 0 with bound < 10^-d."""
    bound = Fraction(bound)
    if bound <= 0:
        raise ValueError("covered_digits needs a positive bound")
    gap = bound.denominator.bit_length() - bound.numerator.bit_length() - 1
    digits = max(0, int(gap * 0.30103) - 2)
    while bound * 10 ** (digits + 1) < 1:
        digits += 1
    return digits


def _smallest_terms(level, target, start):
    terms = max(1, start)
    if tail_bound(level, terms) < target:
        while terms > 1 and tail_bound(level, terms - 1) < target:
            terms -= 1
    else:
        while tail_bound(level, terms) >= target:
            terms += 1
    return terms


def plan_for_digits(digits, level, guard_bits=GUARD_BITS, max_terms=None):
    """
    Smallest M with tail_bound(l, M) < 10^-(D+2) / 2, and the matching F.

    Args:
        digits: Decimal digits D to certify, D >= 1
        level: Series level l >= 2
        guard_bits: Extra fractional bits on top of D log2 10
        max_terms: Optional cap on M

    Returns:
        SeriesPlan with tail and predicted rounding bounds summing below 10^-(D+1)

    Raises:
        PlanError: M would exceed ``max_terms``, or the plan misses its target
    """
    _check_level(level)
    if digits < 1:
        raise ValueError(f"digits must be >= 1, got {digits}")

    target = Fraction(1, 2 * 10 ** (digits + 2))
    # Each term gains about l-1 bits, so this lands a few terms short of M
    estimate = (10 ** (digits + 2)).bit_length() // (level - 1) - 8
    if max_terms is not None and estimate > max_terms + 8:
        raise PlanError(
            f"{digits} digits at level {level} need about {estimate} terms, "
            f"cap is {max_terms}"
        )
    terms = _smallest_terms(level, target, estimate)
    if max_terms is not None and terms > max_terms:
        raise PlanError(
            f"{digits} digits at level {level} need {terms} terms, "
            f"cap is {max_terms}"
        )

    frac_bits = frac_bits_for(digits, level, terms, guard_bits)
    plan = SeriesPlan(
        level=level,
        terms=terms,
        frac_bits=frac_bits,
        tail_bound=tail_bound(level, terms),
        rounding_bound=Fraction(predicted_rounding_ulps(level, terms), 1 << frac_bits),
        digits=digits,
    )
    if plan.total_bound >= Fraction(1, 10 ** (digits + 1)):
        raise PlanError(f"plan for {digits} digits misses its own error target")

    logger.info(
        f"Plan for {digits} digits: level={level}, terms={terms}, "
        f"frac_bits={frac_bits}"
    )
    return plan


def plan_for_terms(level, terms, digits=None, guard_bits=GUARD_BITS):
    """
    Plan for a forced term count (partial sums as in the table of
    approximations). M = 0 is allowed; ``digits`` only sizes F.
    """
    _check_level(level)
    if terms < 0:
        raise ValueError(f"terms must be >= 0, got {terms}")
    bound = tail_bound(level, terms)
    shown = max(digits or 0, covered_digits(bound))
    frac_bits = frac_bits_for(shown + 2, level, terms, guard_bits)
    return SeriesPlan(
        level=level,
        terms=terms,
        frac_bits=frac_bits,
        tail_bound=bound,
        rounding_bound=Fraction(predicted_rounding_ulps(level, terms), 1 << frac_bits),
        digits=None,
    )


def auto_level(digits, cost=2.0):
    """
    Level suggested by the cost model: the smallest l >= 2 with
    (l/(l-1))^c <= 2, clamped to [2, 7].
    """
    if digits < 1:
        raise ValueError(f"digits must be >= 1, got {digits}")
    if not 1 <= cost <= 3:
        raise ValueError(f"cost exponent must lie in [1, 3], got {cost}")

    levels = np.arange(MIN_LEVEL, MAX_LEVEL + 1)
    gains = (levels / (levels - 1)) ** cost
    settled = np.nonzero(gains <= 2)[0]
    level = int(levels[settled[0]]) if settled.size else MAX_LEVEL
    logger.debug(f"auto_level: digits={digits}, cost={cost} -> level {level}")
    return level
