"""
Euler's constant from the level-l dyadic block series.

This package holds the numerical engine: exact coefficient tables,
deterministic fixed-point arithmetic with tracked error bounds, the series
evaluators, the planner and the diagnostics used by the verification suite.
It does not touch Django settings; callers pass configuration in.
"""

from .diagnostics import (
    BoundCheck,
    DeltaRecord,
    LevelAgreement,
    cross_level_agreement,
    delta,
    digits_certain,
    em_derivative_oracle,
    encloses_reference,
    running_max_delta,
    verify_bounds,
)
from .engine import (
    EXACT_TRACK_CAP,
    GammaApproximation,
    block_power_sum,
    em_fixed,
    eta_level_series,
    eta_tail_bound,
    gamma_series,
)
from .exact import (
    PASCAL,
    CmTable,
    EmTable,
    PascalTriangle,
    Rational,
    binomial,
    c_exact,
    default_cm_table,
    default_em_table,
    e_exact,
    e_exact_alternate,
    format_rational,
    harmonic,
    pochhammer_ratio,
    recurrence_residuals,
)
from .exceptions import PlanError, PrecisionError
from .mpfixed import (
    FixedPoint,
    PrecisionCtx,
    fx_add,
    fx_div,
    fx_exp_small,
    fx_from_rational,
    fx_log2,
    fx_mul,
    fx_pow2_real,
    fx_sub,
    fx_to_decimal,
    inverse_log2_enclosure,
    log2_enclosure,
)
from .planner import (
    SeriesPlan,
    auto_level,
    covered_digits,
    frac_bits_for,
    plan_for_digits,
    plan_for_terms,
    tail_bound,
)
from .reference import GAMMA_REFERENCE, ReferenceDigits

__all__ = [
    'BoundCheck',
    'DeltaRecord',
    'LevelAgreement',
    'cross_level_agreement',
    'delta',
    'digits_certain',
    'em_derivative_oracle',
    'encloses_reference',
    'running_max_delta',
    'verify_bounds',
    'EXACT_TRACK_CAP',
    'GammaApproximation',
    'block_power_sum',
    'em_fixed',
    'eta_level_series',
    'eta_tail_bound',
    'gamma_series',
    'PASCAL',
    'CmTable',
    'EmTable',
    'PascalTriangle',
    'Rational',
    'binomial',
    'c_exact',
    'default_cm_table',
    'default_em_table',
    'e_exact',
    'e_exact_alternate',
    'format_rational',
    'harmonic',
    'pochhammer_ratio',
    'recurrence_residuals',
    'PlanError',
    'PrecisionError',
    'FixedPoint',
    'PrecisionCtx',
    'fx_add',
    'fx_div',
    'fx_exp_small',
    'fx_from_rational',
    'fx_log2',
    'fx_mul',
    'fx_pow2_real',
    'fx_sub',
    'fx_to_decimal',
    'inverse_log2_enclosure',
    'log2_enclosure',
    'SeriesPlan',
    'auto_level',
    'covered_digits',
    'frac_bits_for',
    'plan_for_digits',
    'plan_for_terms',
    'tail_bound',
    'GAMMA_REFERENCE',
    'ReferenceDigits',
]
