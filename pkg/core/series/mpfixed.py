"""
Deterministic fixed-point arithmetic on arbitrary-precision integers.

A value is ``mantissa / 2^F`` for the fractional-bit count F of its
PrecisionCtx. Every inexact step truncates toward zero, so each one costs
less than one ulp (2^-F). Each FixedPoint also carries ``err``: a rigorous
bound, in ulps, on the distance between the represented value and the real
number it stands for. The bound is propagated through every operation, so a
result's error is read off the value instead of being estimated separately.

Constants:
- log 2 = sum_{k>=0} 2 / ((2k+1) 3^{2k+1})   (atanh(1/3) series)
- e^x by its Taylor series for |x| <= 1
- 2^s = 2 e^{(s-1) log 2} for |s - 1| <= 1
"""

import logging
import threading
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .exact import int_to_decimal
from .exceptions import PrecisionError

logger = logging.getLogger(__name__)

MIN_FRAC_BITS = 64
ENCLOSURE_BITS = 192


def _tdiv(a, b):
    """Integer division truncating toward zero."""
    q = abs(a) // abs(b)
    return q if (a >= 0) == (b > 0) else -q


def _ceil_div(a, b):
    """ceil(a / b) for a >= 0, b > 0."""
    return -(-a // b)


class PrecisionCtx:
    """
    Shared fractional-bit count for one computation.

    ``op_budget`` counts inexact operations. Increments go through a lock so
    the count is exact whatever thread does the work.
    """

    def __init__(self, frac_bits, minimum_bits=MIN_FRAC_BITS):
        if frac_bits < minimum_bits:
            raise PrecisionError(
                f"frac_bits must be >= {minimum_bits}, got {frac_bits}"
            )
        self.frac_bits = frac_bits
        self.op_budget = 0
        self._lock = threading.Lock()

    @property
    def one(self):
        return 1 << self.frac_bits

    def charge(self, n=1):
        with self._lock:
            self.op_budget += n

    def __repr__(self):
        return f"PrecisionCtx(frac_bits={self.frac_bits}, op_budget={self.op_budget})"


@dataclass(frozen=True, eq=False)
class FixedPoint:
    """Immutable ``mantissa / 2^F`` with an error bound of ``err`` ulps."""

    mantissa: int
    ctx: PrecisionCtx
    err: int = 0

    @property
    def frac_bits(self):
        return self.ctx.frac_bits

    def as_fraction(self):
        return Fraction(self.mantissa, 1 << self.frac_bits)

    def error_bound(self):
        return Fraction(self.err, 1 << self.frac_bits)

    def enclosure(self):
        """Rational interval guaranteed to contain the intended real value."""
        value, radius = self.as_fraction(), self.error_bound()
        return value - radius, value + radius

    def is_zero(self):
        return self.mantissa == 0

    def __eq__(self, other):
        if not isinstance(other, FixedPoint):
            return NotImplemented
        return (
            self.mantissa == other.mantissa
            and self.frac_bits == other.frac_bits
            and self.err == other.err
        )

    def __hash__(self):
        return hash((self.mantissa, self.frac_bits, self.err))

    def __add__(self, other):
        return fx_add(self, other)

    def __sub__(self, other):
        return fx_sub(self, other)

    def __mul__(self, other):
        return fx_mul(self, other)

    def __truediv__(self, other):
        return fx_div(self, other)

    def __neg__(self):
        return FixedPoint(-self.mantissa, self.ctx, self.err)

    def __abs__(self):
        return FixedPoint(abs(self.mantissa), self.ctx, self.err)

    def __repr__(self):
        return (
            f"FixedPoint({fx_to_decimal(self, 20)}, F={self.frac_bits}, "
            f"err={self.err})"
        )


def _same_ctx(a, b):
    if a.frac_bits != b.frac_bits:
        raise PrecisionError(
            f"mixed precision contexts: F={a.frac_bits} vs F={b.frac_bits}"
        )


def fx_from_rational(q, ctx):
    """Truncate a rational to the context; exact for dyadics with exponent <= F."""
    q = Fraction(q)
    scaled = q.numerator << ctx.frac_bits
    mantissa = _tdiv(scaled, q.denominator)
    inexact = mantissa * q.denominator != scaled
    if inexact:
        ctx.charge()
    return FixedPoint(mantissa, ctx, int(inexact))


def fx_from_int(n, ctx):
    return FixedPoint(n << ctx.frac_bits, ctx)


def fx_add(a, b):
    _same_ctx(a, b)
    return FixedPoint(a.mantissa + b.mantissa, a.ctx, a.err + b.err)


def fx_sub(a, b):
    _same_ctx(a, b)
    return FixedPoint(a.mantissa - b.mantissa, a.ctx, a.err + b.err)


def fx_mul(a, b):
    """
    Truncating product.

    |ab - a'b'| <= |a'| e_b + |b'| e_a + e_a e_b, plus one ulp for the
    truncation (primes are represented values).
    """
    _same_ctx(a, b)
    bits = a.frac_bits
    product = a.mantissa * b.mantissa
    mantissa = _tdiv(product, 1 << bits)
    inexact = (mantissa << bits) != product
    if inexact:
        a.ctx.charge()
    propagated = (abs(a.mantissa) + a.err) * b.err + abs(b.mantissa) * a.err
    err = _ceil_div(propagated, 1 << bits) + int(inexact)
    return FixedPoint(mantissa, a.ctx, err)


def fx_div(a, b):
    """
    Truncating quotient.

    |a/b - a'/b'| <= (e_a |b'| + |a'| e_b) / (|b'| (|b'| - e_b)) in ulps,
    plus one ulp for the truncation. Requires |b'| > e_b.
    """
    _same_ctx(a, b)
    if b.mantissa == 0:
        raise PrecisionError("division by a zero fixed-point value")
    if abs(b.mantissa) <= b.err:
        raise PrecisionError(
            "divisor is not separated from zero by its error bound"
        )
    bits = a.frac_bits
    scaled = a.mantissa << bits
    mantissa = _tdiv(scaled, b.mantissa)
    inexact = mantissa * b.mantissa != scaled
    if inexact:
        a.ctx.charge()
    err = int(inexact)
    if a.err or b.err:
        B = abs(b.mantissa)
        err += _ceil_div(
            (a.err * B + abs(a.mantissa) * b.err) << bits,
            B * (B - b.err),
        )
    return FixedPoint(mantissa, a.ctx, err)


def fx_scale(x, k):
    """Exact multiple k*x for an integer k."""
    return FixedPoint(x.mantissa * k, x.ctx, x.err * abs(k))


def fx_shift(x, bits):
    """Exact x * 2^bits, bits >= 0."""
    if bits < 0:
        raise PrecisionError(f"fx_shift only shifts left, got {bits}")
    return FixedPoint(x.mantissa << bits, x.ctx, x.err << bits)


def fx_div_int(x, k):
    """Truncating x / k for a nonzero integer k."""
    if k == 0:
        raise PrecisionError("division by integer zero")
    mantissa = _tdiv(x.mantissa, k)
    inexact = mantissa * k != x.mantissa
    if inexact:
        x.ctx.charge()
    return FixedPoint(mantissa, x.ctx, _ceil_div(x.err, abs(k)) + int(inexact))


def fx_rescale(x, ctx):
    """Move x to another context, truncating when the target is coarser."""
    shift = ctx.frac_bits - x.frac_bits
    if shift >= 0:
        return FixedPoint(x.mantissa << shift, ctx, x.err << shift)
    mantissa = _tdiv(x.mantissa, 1 << -shift)
    inexact = (mantissa << -shift) != x.mantissa
    if inexact:
        ctx.charge()
    return FixedPoint(mantissa, ctx, _ceil_div(x.err, 1 << -shift) + int(inexact))


def fx_inv_pow(n, k, ctx):
    """n^-k from one exact integer power and one truncating division."""
    if n < 2 or k < 1:
        raise ValueError(f"fx_inv_pow needs n >= 2 and k >= 1, got n={n}, k={k}")
    power = n ** k
    mantissa, remainder = divmod(ctx.one, power)
    if remainder:
        ctx.charge()
    return FixedPoint(mantissa, ctx, int(remainder != 0))


@lru_cache(maxsize=32)
def _log2_mantissa(frac_bits):
    """
    Truncated ln 2 at ``frac_bits`` bits with error < 2 ulps.

    The series runs at extra guard bits so the per-term truncations add up to
    well under one final ulp; the tail is dropped once 3^-(2K+1) < 2^-(F+2).
    """
    terms = 1
    while 3 ** (2 * terms + 1) <= 1 << (frac_bits + 2):
        terms += 1
    guard = terms.bit_length() + 2
    work = frac_bits + guard
    total = 0
    for k in range(terms):
        total += (2 << work) // ((2 * k + 1) * 3 ** (2 * k + 1))
    logger.debug(f"log 2 at F={frac_bits}: {terms} atanh terms, {guard} guard bits")
    return total >> guard, terms


def fx_log2(ctx):
    """ln 2 with a recorded bound of 2 ulps."""
    mantissa, terms = _log2_mantissa(ctx.frac_bits)
    ctx.charge(terms + 1)
    return FixedPoint(mantissa, ctx, 2)


@lru_cache(maxsize=8)
def log2_enclosure(bits=ENCLOSURE_BITS):
    """Rational interval (lo, hi) containing ln 2."""
    mantissa, _ = _log2_mantissa(bits)
    scale = 1 << bits
    return Fraction(mantissa - 2, scale), Fraction(mantissa + 2, scale)


@lru_cache(maxsize=8)
def inverse_log2_enclosure(bits=ENCLOSURE_BITS):
    """Rational interval (lo, hi) containing 1 / ln 2."""
    lo, hi = log2_enclosure(bits)
    return 1 / hi, 1 / lo


def fx_exp_small(x):
    """
    e^x for |x| <= 1 by Taylor series.

    Terms are summed at F + g bits until 1/N! < 2^-(F+2); the dropped tail
    is below half an ulp and the guarded sum is below another half ulp, so
    the result is within 2 ulps of e^x' (x' the represented input). The input
    error is propagated with |d/dx e^x| < 3 on [-1, 1].
    """
    ctx = x.ctx
    bits = ctx.frac_bits
    if abs(x.mantissa) > ctx.one:
        raise PrecisionError("fx_exp_small needs |x| <= 1")

    terms, factorial = 1, 1
    while factorial <= 1 << (bits + 2):
        terms += 1
        factorial *= terms
    guard = (64 * terms).bit_length() + 1
    work = bits + guard
    x_work = x.mantissa << guard

    term = 1 << work
    total = term
    for k in range(1, terms):
        term = _tdiv(_tdiv(term * x_work, 1 << work), k)
        if term == 0:
            break
        total += term

    mantissa = _tdiv(total, 1 << guard)
    ctx.charge(2 * terms + 1)
    return FixedPoint(mantissa, ctx, 2 + 3 * x.err)


def fx_pow2_real(s, ctx):
    """2^s = 2 e^{(s-1) log 2} for rational |s - 1| <= 1."""
    h = Fraction(s) - 1
    if abs(h) > 1:
        raise PrecisionError(f"fx_pow2_real needs |s - 1| <= 1, got s={s}")
    if h == 0:
        return fx_from_int(2, ctx)
    exponent = fx_mul(fx_from_rational(h, ctx), fx_log2(ctx))
    return fx_scale(fx_exp_small(exponent), 2)


def fx_to_decimal(x, digits):
    """
    Decimal string of x truncated toward zero to ``digits`` fractional digits.

    No rounding: the parsed string never exceeds |x| in magnitude.
    """
    if digits < 1:
        raise ValueError(f"digits must be >= 1, got {digits}")
    bits = x.frac_bits
    magnitude = abs(x.mantissa)
    integer_part = magnitude >> bits
    fraction = ((magnitude & ((1 << bits) - 1)) * 10 ** digits) >> bits
    sign = "-" if x.mantissa < 0 else ""
    return f"{sign}{int_to_decimal(integer_part)}.{int_to_decimal(fraction, digits)}"
