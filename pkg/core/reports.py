"""
Table builders and renderers for the command-line reports.

Three tables are reproduced:
- Table 1: partial sums of the level-l series (up to e_10 for l = 2..7 and
  up to e_20 for l = 2..4), truncated to the digits their rigorous bound
  covers, with the magnitude of the last summed term
- Table 2: delta_m = e_m - H_{m+1}/log 2 for m = 1..20, truncated to 12 digits
- Table 3: exact e_1..e_20

Each builder returns plain dicts, so the same rows feed the plain, JSON and
LaTeX renderers and the Celery payloads.
"""

import json
import logging
from fractions import Fraction

from mpmath import mp

from core.series import (
    EXACT_TRACK_CAP,
    GAMMA_REFERENCE,
    PrecisionCtx,
    c_exact,
    covered_digits,
    digits_certain,
    e_exact,
    format_rational,
    fx_to_decimal,
    gamma_series,
    plan_for_terms,
    running_max_delta,
)

logger = logging.getLogger(__name__)

FORMATS = ("plain", "json", "latex")

# Digit counts printed in the published table, keyed by (level, terms).
PUBLISHED_TABLE1_DIGITS = {
    (2, 10): 6,
    (3, 10): 10,
    (4, 10): 12,
    (5, 10): 16,
    (6, 10): 20,
    (7, 10): 24,
    (2, 20): 10,
    (3, 20): 18,
    (4, 20): 24,
}
TABLE1_LAYOUT = [(level, 10) for level in range(2, 8)] + [
    (level, 20) for level in range(2, 5)
]

TABLE2_DIGITS = 12
TABLE2_FRAC_BITS = 128
TABLES_M_MAX = 20


def format_magnitude(value, significant=4):
    """Scientific notation with a few significant digits, for any rational size."""
    value = Fraction(value)
    if value == 0:
        return "0"
    with mp.workdps(significant + 10):
        number = mp.mpf(value.numerator) / mp.mpf(value.denominator)
        return mp.nstr(number, significant, min_fixed=0, max_fixed=0)


def log10_of(value):
    """log10 of a positive rational as a float."""
    value = Fraction(value)
    if value <= 0:
        raise ValueError("log10_of needs a positive value")
    with mp.workdps(30):
        result = mp.log10(mp.mpf(value.numerator)) - mp.log10(mp.mpf(value.denominator))
        return float(result)


def latex_rational(q):
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    sign = "-" if q < 0 else ""
    return f"{sign}\\frac{{{abs(q.numerator)}}}{{{q.denominator}}}"


def approximation_payload(approximation, digits_shown, elapsed_ms=None):
    """JSON-able summary of a gamma evaluation (shared by commands and tasks)."""
    plan = approximation.plan
    return {
        "value": fx_to_decimal(approximation.value, digits_shown),
        "error_bound": format_magnitude(approximation.total_error_bound),
        "level": plan.level,
        "terms": plan.terms,
        "frac_bits": plan.frac_bits,
        "elapsed_ms": elapsed_ms,
        "digits_certain": digits_certain(approximation, digits_shown),
        "em_track": approximation.em_track,
    }


def plan_payload(plan, elapsed_ms=None):
    return {
        "value": None,
        "error_bound": format_magnitude(plan.total_bound),
        "level": plan.level,
        "terms": plan.terms,
        "frac_bits": plan.frac_bits,
        "elapsed_ms": elapsed_ms,
        "tail_bound_log10": round(log10_of(plan.tail_bound), 3),
    }


def table1_rows(exact_track_cap=EXACT_TRACK_CAP):
    """Partial sums of Table 1 plus the reference row."""
    rows = []
    for level, terms in TABLE1_LAYOUT:
        plan = plan_for_terms(level, terms)
        approximation = gamma_series(plan, exact_track_cap=exact_track_cap)
        digits = max(1, covered_digits(approximation.total_error_bound))
        published_digits = PUBLISHED_TABLE1_DIGITS[(level, terms)]
        if digits != published_digits:
            logger.debug(
                f"Table 1 row l={level}, M={terms}: bound covers {digits} "
                f"digits, published row shows {published_digits}"
            )
        rows.append(
            {
                "label": f"l={level}, e_{terms}",
                "level": level,
                "terms": terms,
                "digits": digits,
                "published_digits": published_digits,
                "value": fx_to_decimal(approximation.value, digits),
                "error_bound": format_magnitude(approximation.total_error_bound),
                "last_term": format_magnitude(abs(approximation.last_term)),
            }
        )
    rows.append(
        {
            "label": "gamma",
            "level": None,
            "terms": None,
            "digits": GAMMA_REFERENCE.fraction_digits,
            "published_digits": GAMMA_REFERENCE.fraction_digits,
            "value": GAMMA_REFERENCE.digits,
            "error_bound": None,
            "last_term": None,
        }
    )
    return rows


def delta_rows(
    m_lo=1, m_hi=TABLES_M_MAX, digits_shown=TABLE2_DIGITS, frac_bits=TABLE2_FRAC_BITS
):
    """delta_m truncated to ``digits_shown`` digits with the running maximum mu_m."""
    frac_bits = max(frac_bits, (10 ** digits_shown).bit_length() + 64)
    ctx = PrecisionCtx(frac_bits)
    rows = []
    for record, best in running_max_delta(m_hi, ctx)[m_lo:]:
        rows.append(
            {
                "m": record.m,
                "delta": fx_to_decimal(record.delta, digits_shown),
                "mu": fx_to_decimal(best.delta, digits_shown),
                "mu_at": best.m,
            }
        )
    return rows


def table2_rows():
    return delta_rows(1, TABLES_M_MAX, TABLE2_DIGITS)


def em_rows(m_lo=1, m_hi=TABLES_M_MAX, table=None):
    return [
        {"m": m, "value": format_rational(e_exact(m, table)), "exact": e_exact(m, table)}
        for m in range(m_lo, m_hi + 1)
    ]


def table3_rows():
    return em_rows(1, TABLES_M_MAX)


TABLE_COLUMNS = {
    1: ("label", "value", "digits", "published_digits", "last_term"),
    2: ("m", "delta", "mu"),
    3: ("m", "value"),
}


def render_rows(rows, columns, fmt):
    """Render rows as space-separated text, a JSON array or a LaTeX table body."""
    if fmt not in FORMATS:
        raise ValueError(f"unknown format {fmt!r}, expected one of {FORMATS}")
    if fmt == "json":
        cleaned = [{key: _jsonable(row[key]) for key in columns} for row in rows]
        return json.dumps(cleaned, ensure_ascii=False)
    if fmt == "latex":
        return "\n".join(
            " & ".join(_latex_cell(row, key) for key in columns) + r" \\"
            for row in rows
        )
    return "\n".join(
        "  ".join("" if row[key] is None else str(row[key]) for key in columns).rstrip()
        for row in rows
    )


def _jsonable(value):
    if isinstance(value, Fraction):
        return format_rational(value)
    return value


def _latex_cell(row, key):
    value = row[key]
    if value is None:
        return ""
    if key == "value" and "exact" in row:
        return f"${latex_rational(row['exact'])}$"
    return str(value)


def cm_rows(s, m_lo=0, m_hi=TABLES_M_MAX):
    return [
        {"m": m, "value": format_rational(c_exact(s, m)), "exact": c_exact(s, m)}
        for m in range(m_lo, m_hi + 1)
    ]
