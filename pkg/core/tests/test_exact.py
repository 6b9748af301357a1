"""
Tests for exact coefficient tables, Pascal rows and harmonic numbers.
"""

import math
import pytest
from fractions import Fraction

from core.series import (
    CmTable,
    PascalTriangle,
    binomial,
    c_exact,
    default_em_table,
    e_exact,
    e_exact_alternate,
    format_rational,
    harmonic,
    pochhammer_ratio,
    recurrence_residuals,
)
from core.series.exact import int_to_decimal, next_pascal_row


class TestEmTable:
    """Exact e_m from the recurrence."""

    def test_first_coefficients(self, em_table):
        """e_0..e_5 are 0, 2, 7/3, 8/3, 133/45, 16/5."""
        expected = [
            Fraction(0),
            Fraction(2),
            Fraction(7, 3),
            Fraction(8, 3),
            Fraction(133, 45),
            Fraction(16, 5),
        ]
        assert [e_exact(m, em_table) for m in range(6)] == expected

    def test_e0_is_zero(self, em_table):
        assert e_exact(0, em_table) == 0

    def test_positive_after_zero(self, em_table):
        """Every e_m with 1 <= m <= 200 is strictly positive."""
        assert all(value > 0 for value in em_table.prefix(201)[1:])

    def test_recurrence_residuals_vanish(self, em_table):
        """The recurrence holds exactly for m <= 200."""
        residuals = recurrence_residuals(200, em_table)
        assert len(residuals) == 200
        assert all(r == 0 for r in residuals)

    def test_alternate_recurrence_agrees(self, em_table):
        """The derivative form of the recurrence gives the same values."""
        for m in range(0, 31):
            assert e_exact_alternate(m) == e_exact(m, em_table)

    def test_table_is_append_only(self, em_table):
        """Reading an earlier index never shrinks the table."""
        em_table.get(25)
        before = list(em_table.values)
        assert em_table.get(3) == Fraction(8, 3)
        assert em_table.computed_up_to == 25
        assert em_table.values == before

    def test_values_are_canonical(self, em_table):
        for value in em_table.prefix(60):
            assert isinstance(value, Fraction)
            assert value.denominator > 0
            assert math.gcd(value.numerator, value.denominator) == 1

    def test_shared_table_matches_fresh_table(self, em_table):
        assert default_em_table().prefix(20) == em_table.prefix(20)

    def test_negative_index_rejected(self, em_table):
        with pytest.raises(ValueError):
            e_exact(-1, em_table)


class TestCmTable:
    """Exact c_m(s) for integer s >= 1."""

    def test_c2_at_s2(self):
        assert c_exact(2, 2) == Fraction(2, 21)

    def test_c1_at_s2(self):
        assert c_exact(2, 1) == Fraction(1, 6)

    def test_s1_is_harmonic_reciprocal(self):
        """(m+1) c_m(1) = 1 for m <= 200."""
        table = CmTable(1)
        for m in range(0, 201):
            assert (m + 1) * c_exact(1, m, table) == 1

    def test_c0_is_one(self):
        for s in (1, 2, 5):
            assert c_exact(s, 0) == 1

    def test_decreasing_in_s(self):
        for m in range(1, 12):
            assert c_exact(3, m) < c_exact(2, m) < c_exact(1, m)

    @pytest.mark.parametrize("s", [0, -1])
    def test_rejects_small_s(self, s):
        with pytest.raises(ValueError):
            c_exact(s, 3)
        with pytest.raises(ValueError):
            CmTable(s)

    def test_rejects_mismatched_table(self):
        with pytest.raises(ValueError):
            c_exact(2, 3, CmTable(3))


class TestPascal:
    """Pascal rows built by addition."""

    def test_small_row(self):
        assert PascalTriangle().row(5) == (1, 5, 10, 10, 5, 1)

    def test_next_row(self):
        assert next_pascal_row((1, 3, 3, 1)) == (1, 4, 6, 4, 1)

    def test_rows_beyond_cache_are_not_stored(self):
        triangle = PascalTriangle(max_cached_rows=4)
        assert triangle.row(10)[5] == 252
        assert triangle.cached_rows == 4

    def test_iter_rows_past_cache(self):
        triangle = PascalTriangle(max_cached_rows=3)
        rows = list(triangle.iter_rows(8))
        assert len(rows) == 9
        assert rows[8] == PascalTriangle().row(8)

    def test_rows_are_symmetric(self):
        for n in range(0, 65):
            for k in range(0, n + 1):
                assert binomial(n, k) == binomial(n, n - k)

    def test_row_sums_are_powers_of_two(self):
        triangle = PascalTriangle()
        for n in range(0, 60):
            assert sum(triangle.row(n)) == 1 << n

    def test_binomial(self):
        assert binomial(10, 3) == 120
        assert binomial(12, 5) == 792
        assert binomial(4, 5) == 0
        assert binomial(4, -1) == 0


class TestHarmonicAndHelpers:
    def test_harmonic_values(self):
        assert harmonic(0) == 0
        assert harmonic(1) == 1
        assert harmonic(4) == Fraction(25, 12)
        assert harmonic(6) == Fraction(49, 20)

    def test_pochhammer_ratio(self):
        """(s)_m / m! as a binomial coefficient."""
        assert pochhammer_ratio(1, 7) == 1
        assert pochhammer_ratio(2, 3) == 4
        assert pochhammer_ratio(3, 2) == 6

    def test_format_rational(self):
        assert format_rational(Fraction(7, 3)) == "7/3"
        assert format_rational(Fraction(16, 5)) == "16/5"
        assert format_rational(Fraction(2)) == "2"
        assert format_rational(Fraction(0)) == "0"
        assert format_rational(Fraction(-1, 2)) == "-1/2"

    def test_int_to_decimal_pads(self):
        assert int_to_decimal(7, 3) == "007"
        assert int_to_decimal(0) == "0"

    def test_int_to_decimal_large(self):
        """Values past the split threshold match the builtin conversion."""
        n = 3 ** 8500
        assert int_to_decimal(n) == str(n)
        assert int_to_decimal(10 ** 6000) == "1" + "0" * 6000
