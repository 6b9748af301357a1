"""
Tests for table builders and renderers.
"""

import json
import pytest
from fractions import Fraction

from core.reports import (
    PUBLISHED_TABLE1_DIGITS,
    TABLE_COLUMNS,
    cm_rows,
    delta_rows,
    em_rows,
    format_magnitude,
    latex_rational,
    log10_of,
    render_rows,
    table1_rows,
    table2_rows,
    table3_rows,
)
from core.series import GAMMA_REFERENCE


class TestFormatting:
    def test_format_magnitude(self):
        assert "e-200" in format_magnitude(Fraction(1, 10 ** 200))
        assert format_magnitude(0) == "0"
        assert format_magnitude(Fraction(12341, 10 ** 9)).startswith("1.234")

    def test_log10_of(self):
        assert log10_of(Fraction(1, 10 ** 50)) == pytest.approx(-50.0)
        with pytest.raises(ValueError):
            log10_of(0)

    def test_latex_rational(self):
        assert latex_rational(Fraction(7, 3)) == r"\frac{7}{3}"
        assert latex_rational(Fraction(2)) == "2"
        assert latex_rational(Fraction(-1, 6)) == r"-\frac{1}{6}"


class TestTable1:
    @pytest.fixture(scope="class")
    def rows(self):
        return table1_rows()

    def test_layout(self, rows):
        assert len(rows) == len(PUBLISHED_TABLE1_DIGITS) + 1
        assert rows[-1]["value"] == "0.577215664901532860606512090"

    def test_rows_are_covered_by_their_bounds(self, rows):
        """Each truncated row is within 2 * 10^-d of gamma."""
        reference = Fraction(GAMMA_REFERENCE.digits)
        for row in rows[:-1]:
            value = Fraction(row["value"])
            assert abs(value - reference) < Fraction(2, 10 ** row["digits"])
            assert len(row["value"]) == row["digits"] + 2

    def test_more_terms_cover_more_digits(self, rows):
        by_key = {(row["level"], row["terms"]): row["digits"] for row in rows[:-1]}
        for level in (2, 3, 4):
            assert by_key[(level, 20)] > by_key[(level, 10)]

    def test_annotations(self, rows):
        assert rows[0]["published_digits"] == 6
        assert rows[5]["published_digits"] == 24


class TestTables2And3:
    def test_table2_first_row(self):
        rows = table2_rows()
        assert rows[0]["m"] == 1
        assert rows[0]["delta"].startswith("-0.164042561333")
        assert len(rows) == 20

    def test_delta_rows_mu(self):
        rows = delta_rows(0, 10)
        assert rows[-1]["mu_at"] == 1
        assert rows[0]["m"] == 0

    def test_table3(self):
        rows = table3_rows()
        assert rows[4]["m"] == 5
        assert rows[4]["value"] == "16/5"
        assert len(rows) == 20

    def test_em_and_cm_rows(self):
        assert [r["value"] for r in em_rows(0, 3)] == ["0", "2", "7/3", "8/3"]
        assert [r["value"] for r in cm_rows(2, 0, 2)] == ["1", "1/6", "2/21"]


class TestRender:
    def test_plain(self):
        text = render_rows(table3_rows()[:2], TABLE_COLUMNS[3], "plain")
        assert text.splitlines() == ["1  2", "2  7/3"]

    def test_json(self):
        data = json.loads(render_rows(em_rows(1, 2), ("m", "value"), "json"))
        assert data == [{"m": 1, "value": "2"}, {"m": 2, "value": "7/3"}]

    def test_latex(self):
        text = render_rows(em_rows(2, 2), ("m", "value"), "latex")
        assert text == r"2 & $\frac{7}{3}$ \\"

    def test_unknown_format(self):
        with pytest.raises(ValueError):
            render_rows([], ("m",), "csv")
