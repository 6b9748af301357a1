"""
Tests for the series evaluators: block sums, fixed-point e_m, gamma and eta.
"""

import pytest
import numpy as np
from fractions import Fraction
from mpmath import mp

from core.series import (
    GAMMA_REFERENCE,
    PrecisionCtx,
    block_power_sum,
    e_exact,
    em_fixed,
    encloses_reference,
    eta_level_series,
    eta_tail_bound,
    fx_log2,
    fx_to_decimal,
    gamma_series,
    plan_for_digits,
    plan_for_terms,
)
from core.series.engine import series_coefficients


class TestBlockPowerSum:
    @pytest.mark.parametrize(
        "level, k, exact",
        [
            (2, 2, Fraction(13, 36)),
            (2, 1, Fraction(5, 6)),
            (3, 1, Fraction(319, 420)),
        ],
    )
    def test_matches_exact_sum(self, ctx, level, k, exact):
        value = block_power_sum(level, k, ctx)
        assert abs(value.as_fraction() - exact) <= value.error_bound()
        assert value.err < 2 * (1 << (level - 1))

    def test_rejects_level_one(self, ctx):
        with pytest.raises(ValueError):
            block_power_sum(1, 2, ctx)


class TestEmFixed:
    """Fixed-point e_m track against the exact table."""

    def test_first_entries(self, ctx):
        entries = em_fixed(3, ctx)
        for m, expected in enumerate([0, 2, Fraction(7, 3), Fraction(8, 3)]):
            assert abs(entries[m].as_fraction() - expected) <= entries[m].error_bound()

    def test_e5(self, ctx):
        entry = em_fixed(5, ctx)[5]
        assert abs(entry.as_fraction() - Fraction(16, 5)) <= entry.error_bound()

    def test_zero(self, ctx):
        entries = em_fixed(0, ctx)
        assert len(entries) == 1
        assert entries[0].mantissa == 0

    def test_agrees_with_exact_past_the_cap(self, ctx):
        """Agreement within recorded bounds up to m = 520; errors grow by at most one ulp per step."""
        entries = em_fixed(520, ctx)
        for m in range(0, 521, 13):
            assert abs(entries[m].as_fraction() - e_exact(m)) <= entries[m].error_bound()
        for m in range(1, 521):
            assert entries[m].err <= entries[m - 1].err + 1
            assert entries[m].err <= m


class TestGammaSeries:
    def test_empty_series(self):
        """l=2, M=0 is 1 - log 2."""
        approximation = gamma_series(plan_for_terms(2, 0, digits=6))
        assert fx_to_decimal(approximation.value, 6) == "0.306852"
        assert approximation.terms_used == 0

    def test_one_term(self):
        """l=2, M=1 adds e_1/2 * (1/4 + 1/9); the truncated value is 0.667963..."""
        approximation = gamma_series(plan_for_terms(2, 1, digits=6))
        assert fx_to_decimal(approximation.value, 6) == "0.667963"
        with mp.workdps(30):
            expected = 1 - mp.log(2) + mp.mpf(13) / 36
            assert abs(mp.mpf(approximation.value.mantissa) / 2 ** approximation.value.frac_bits - expected) < mp.mpf(10) ** -20

    def test_hundred_digits_at_level_four(self):
        plan = plan_for_digits(100, 4)
        approximation = gamma_series(plan)
        assert fx_to_decimal(approximation.value, 100).startswith(GAMMA_REFERENCE.digits)
        assert approximation.total_error_bound < Fraction(1, 10 ** 101)
        assert approximation.em_track == "exact"

    @pytest.mark.parametrize("level", range(2, 8))
    def test_reference_digits_at_every_level(self, level):
        approximation = gamma_series(plan_for_digits(27, level))
        assert fx_to_decimal(approximation.value, 27) == GAMMA_REFERENCE.digits

    def test_fixed_track_matches_exact_track(self):
        plan = plan_for_digits(60, 3)
        exact = gamma_series(plan)
        fixed = gamma_series(plan, exact_track_cap=10)
        assert exact.em_track == "exact"
        assert fixed.em_track == "fixed"
        difference = abs(exact.value.as_fraction() - fixed.value.as_fraction())
        assert difference <= exact.rounding_error_bound + fixed.rounding_error_bound
        assert encloses_reference(fixed)

    def test_thousand_digits_uses_fixed_track(self):
        approximation = gamma_series(plan_for_digits(1000, 4))
        assert approximation.em_track == "fixed"
        assert approximation.terms_used > 512
        assert fx_to_decimal(approximation.value, 1000).startswith(GAMMA_REFERENCE.digits)

    def test_deterministic(self):
        plan = plan_for_digits(40, 5)
        assert gamma_series(plan).value == gamma_series(plan).value

    def test_term_signs(self, ctx):
        """Coefficients and block sums are positive, so term m has sign (-1)^(m-1)."""
        coefficients, track = series_coefficients(200, ctx)
        assert track == "exact"
        assert all(c.mantissa > 0 for c in coefficients)
        assert all(block_power_sum(3, m + 1, PrecisionCtx(4096)).mantissa > 0 for m in range(1, 201, 20))

    def test_last_term_shrinks_with_level(self):
        low = gamma_series(plan_for_terms(2, 10))
        high = gamma_series(plan_for_terms(5, 10))
        assert abs(high.last_term) < abs(low.last_term)

    def test_enclosure_on_random_plans(self, rng):
        """100 random plans enclose the reference whenever the bound exceeds 10^-27."""
        levels = rng.integers(2, 8, size=100)
        digits = rng.integers(10, 61, size=100)
        for level, d in zip(levels, digits):
            approximation = gamma_series(plan_for_digits(int(d), int(level)))
            assert encloses_reference(approximation)
            if approximation.total_error_bound > Fraction(1, 10 ** 27):
                lo, hi = GAMMA_REFERENCE.interval()
                value = approximation.value.as_fraction()
                assert lo - approximation.total_error_bound <= value
                assert value <= hi + approximation.total_error_bound


class TestEtaSeries:
    @pytest.mark.parametrize("level", [2, 3, 4])
    def test_eta_one_is_log2(self, wide_ctx, level):
        value = eta_level_series(1, level, 40, wide_ctx)
        log2 = fx_log2(wide_ctx)
        allowed = eta_tail_bound(1, level, 40) + value.error_bound() + log2.error_bound()
        assert abs(value.as_fraction() - log2.as_fraction()) <= allowed

    def test_eta_two_levels_agree(self, wide_ctx):
        low = eta_level_series(2, 2, 40, wide_ctx)
        high = eta_level_series(2, 4, 40, wide_ctx)
        allowed = (
            eta_tail_bound(2, 2, 40) + low.error_bound()
            + eta_tail_bound(2, 4, 40) + high.error_bound()
        )
        assert abs(low.as_fraction() - high.as_fraction()) <= allowed

    def test_eta_two_against_direct_sum(self, wide_ctx):
        """A million-term alternating sum agrees to 1e-10."""
        n = np.arange(1, 10 ** 6 + 1, dtype=np.float64)
        signs = np.where(n % 2 == 1, 1.0, -1.0)
        direct = float(np.sum(signs / n ** 2))
        value = eta_level_series(2, 3, 40, wide_ctx)
        assert abs(float(value.as_fraction()) - direct) < 1e-10

    def test_eta_two_is_pi_squared_over_twelve(self, wide_ctx):
        value = eta_level_series(2, 4, 40, wide_ctx)
        bound = eta_tail_bound(2, 4, 40) + value.error_bound()
        with mp.workdps(60):
            difference = abs(mp.mpf(value.mantissa) / 2 ** value.frac_bits - mp.pi ** 2 / 12)
            assert difference <= mp.mpf(bound.numerator) / bound.denominator

    def test_tail_bound_decreases(self):
        bounds = [eta_tail_bound(2, 3, m) for m in range(0, 30)]
        assert all(a > b for a, b in zip(bounds, bounds[1:]))

    @pytest.mark.parametrize("s", [0, -2])
    def test_rejects_non_positive_s(self, ctx, s):
        with pytest.raises(ValueError):
            eta_level_series(s, 2, 10, ctx)
