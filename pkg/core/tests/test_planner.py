"""
Tests for tail bounds, plans and the level cost model.
"""

import pytest
from fractions import Fraction

from core.series import (
    PlanError,
    auto_level,
    covered_digits,
    e_exact,
    frac_bits_for,
    gamma_series,
    plan_for_digits,
    plan_for_terms,
    tail_bound,
)
from core.series.planner import predicted_rounding_ulps


@pytest.fixture(scope="module")
def level2_terms():
    """Exact terms t_m = (-1)^(m-1) e_m/(m+1) (2^-(m+1) + 3^-(m+1)) for m = 1..210."""
    return [
        (-1) ** (m - 1)
        * e_exact(m)
        / (m + 1)
        * (Fraction(1, 2 ** (m + 1)) + Fraction(1, 3 ** (m + 1)))
        for m in range(1, 211)
    ]


class TestTailBound:
    def test_bounds_brute_force_tail(self, level2_terms):
        """B(2, M) covers the next 200 terms for M = 1..10."""
        for terms in range(1, 11):
            tail = sum(level2_terms[terms:terms + 200], Fraction(0))
            assert abs(tail) <= tail_bound(2, terms)

    @pytest.mark.parametrize("level", [2, 3, 4, 7])
    def test_strictly_decreasing(self, level):
        bounds = [tail_bound(level, m) for m in range(0, 60)]
        assert all(a > b for a, b in zip(bounds, bounds[1:]))

    def test_level4_at_113_terms(self):
        assert tail_bound(4, 113) < Fraction(1, 10 ** 102)

    def test_rejects_bad_arguments(self):
        with pytest.raises(ValueError):
            tail_bound(1, 10)
        with pytest.raises(ValueError):
            tail_bound(3, -1)


class TestPlanForDigits:
    def test_hundred_digits_level_four(self):
        plan = plan_for_digits(100, 4)
        assert 110 <= plan.terms <= 116
        assert plan.level == 4
        assert plan.digits == 100

    def test_six_digits_level_two(self):
        assert plan_for_digits(6, 2).terms >= 10

    @pytest.mark.parametrize("level", range(2, 8))
    def test_one_digit(self, level):
        plan = plan_for_digits(1, level)
        assert plan.terms >= 1

    def test_smallest_term_count(self):
        plan = plan_for_digits(40, 3)
        target = Fraction(1, 2 * 10 ** 42)
        assert tail_bound(3, plan.terms) < target
        assert tail_bound(3, plan.terms - 1) >= target

    def test_frac_bits_rule(self):
        plan = plan_for_digits(100, 4)
        assert plan.frac_bits == frac_bits_for(100, 4, plan.terms)
        assert frac_bits_for(100, 4, 113) == 333 + 64 + 10

    def test_random_plans_meet_their_target(self, rng):
        for _ in range(100):
            digits = int(rng.integers(1, 300))
            level = int(rng.integers(2, 8))
            plan = plan_for_digits(digits, level)
            assert plan.total_bound < Fraction(1, 10 ** (digits + 1))
            assert plan.terms >= 1 and plan.level >= 2

    def test_term_cap(self):
        with pytest.raises(PlanError):
            plan_for_digits(1000, 2, max_terms=100)

    def test_rejects_bad_arguments(self):
        with pytest.raises(ValueError):
            plan_for_digits(0, 3)
        with pytest.raises(ValueError):
            plan_for_digits(10, 1)


class TestPlanForTerms:
    def test_zero_terms(self):
        plan = plan_for_terms(2, 0)
        assert plan.terms == 0
        assert plan.digits is None
        assert plan.tail_bound > 1

    def test_digits_size_the_precision(self):
        assert plan_for_terms(2, 10, digits=200).frac_bits > plan_for_terms(2, 10).frac_bits


class TestRoundingBudget:
    def test_budget_formula(self):
        assert predicted_rounding_ulps(2, 0) == 80
        assert predicted_rounding_ulps(2, 10) == 10 * 16 + 80
        assert predicted_rounding_ulps(4, 3) == 3 * 40 + 96

    @pytest.mark.parametrize("level, terms", [(2, 50), (3, 20), (4, 113)])
    def test_budget_covers_tracked_rounding(self, level, terms):
        plan = plan_for_terms(level, terms)
        value = gamma_series(plan).value
        assert value.err <= predicted_rounding_ulps(level, terms)


class TestAutoLevel:
    @pytest.mark.parametrize("cost, level", [(1, 2), (2, 4), (3, 5)])
    def test_cost_model(self, cost, level):
        assert auto_level(100, cost) == level

    def test_default_cost(self):
        assert auto_level(100) == 4

    @pytest.mark.parametrize("cost", [0.5, 3.5])
    def test_rejects_cost_outside_range(self, cost):
        with pytest.raises(ValueError):
            auto_level(100, cost)

    def test_rejects_zero_digits(self):
        with pytest.raises(ValueError):
            auto_level(0)


class TestCoveredDigits:
    def test_powers_of_ten(self):
        assert covered_digits(Fraction(1, 10 ** 5)) == 4
        assert covered_digits(Fraction(9, 10 ** 6)) == 5
        assert covered_digits(Fraction(3, 2)) == 0

    def test_tiny_bound(self):
        assert covered_digits(Fraction(1, 10 ** 500) / 3) == 500

    def test_rejects_zero(self):
        with pytest.raises(ValueError):
            covered_digits(0)
