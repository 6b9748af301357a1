"""
Exact integer and rational machinery for the dyadic-block series.

Binomials come from Pascal rows built by addition, harmonic numbers and the
two coefficient recurrences are kept as canonical Fractions:

    e_0 = 0,   (2^{m+1} - 2) e_m = 2^{m+1} + sum_{j=1..m} C(m+1, j) e_{m-j}
    c_0(s) = 1, (2^{m+s} - 2) c_m(s) = sum_{j=1..m} C(m, j) c_{m-j}(s)

Tables are append-only and shared: the planner, the tables printed by the CLI
and the verification suite all read the same prefixes.

References:
- Graham, Knuth, Patashnik (1994). Concrete Mathematics, 2nd ed., ch. 5
  (binomial identities, sum_{j} C(n, j) = 2^n).
"""

import logging
import threading
from fractions import Fraction
from functools import lru_cache
from math import lcm

logger = logging.getLogger(__name__)

Rational = Fraction

PASCAL_CACHE_ROWS = 1024


def next_pascal_row(row):
    """Row n+1 of Pascal's triangle from row n, by addition only."""
    return (1, *(a + b for a, b in zip(row, row[1:])), 1)


class PascalTriangle:
    """
    Cached Pascal rows.

    Rows up to ``max_cached_rows`` are stored; longer walks (the fixed-point
    e_m track goes past a thousand rows) are extended additively on the fly
    without growing the cache.
    """

    def __init__(self, max_cached_rows=PASCAL_CACHE_ROWS):
        self.max_cached_rows = max_cached_rows
        self._rows = [(1,)]
        self._lock = threading.Lock()

    @property
    def cached_rows(self):
        return len(self._rows)

    def row(self, n):
        """Return (C(n, 0), ..., C(n, n))."""
        if n < 0:
            raise ValueError(f"Pascal row index must be >= 0, got {n}")
        if n < len(self._rows):
            return self._rows[n]

        with self._lock:
            limit = min(n, self.max_cached_rows - 1)
            while len(self._rows) <= limit:
                self._rows.append(next_pascal_row(self._rows[-1]))
            if n < len(self._rows):
                return self._rows[n]
            row = self._rows[-1]

        for _ in range(len(self._rows) - 1, n):
            row = next_pascal_row(row)
        return row

    def iter_rows(self, stop):
        """Yield rows 0..stop in order."""
        row = None
        for n in range(stop + 1):
            if n < self.max_cached_rows:
                row = self.row(n)
            else:
                row = next_pascal_row(row)
            yield row


PASCAL = PascalTriangle()


_DECIMAL_CHUNK = 4000


def int_to_decimal(n, width=0):
    """
    Decimal digits of an integer, zero-padded to ``width``.

    Splits large values recursively so conversions are not limited by the
    interpreter's int-to-str digit cap.
    """
    if n < 0:
        return "-" + int_to_decimal(-n, width)
    if n.bit_length() < 3 * _DECIMAL_CHUNK and width <= _DECIMAL_CHUNK:
        return f"{n:0{width}d}"
    if width == 0:
        width = int(n.bit_length() * 0.30103) + 1
        return int_to_decimal(n, width).lstrip("0") or "0"
    low_width = width // 2
    high, low = divmod(n, 10 ** low_width)
    return int_to_decimal(high, width - low_width) + int_to_decimal(low, low_width)


def format_rational(q):
    """Canonical "p/q" string, or "p" for integers."""
    q = Fraction(q)
    numerator = int_to_decimal(q.numerator)
    if q.denominator == 1:
        return numerator
    return f"{numerator}/{int_to_decimal(q.denominator)}"


def binomial(n, k):
    """C(n, k) from the shared Pascal cache; 0 when k < 0 or k > n."""
    if n < 0:
        raise ValueError(f"binomial needs n >= 0, got {n}")
    if k < 0 or k > n:
        return 0
    return PASCAL.row(n)[k]


_harmonic_values = [Fraction(0)]
_harmonic_lock = threading.Lock()


def harmonic(n):
    """Exact H_n = 1 + 1/2 + ... + 1/n, with H_0 = 0."""
    if n < 0:
        raise ValueError(f"harmonic needs n >= 0, got {n}")
    if n >= len(_harmonic_values):
        with _harmonic_lock:
            while len(_harmonic_values) <= n:
                k = len(_harmonic_values)
                _harmonic_values.append(_harmonic_values[-1] + Fraction(1, k))
    return _harmonic_values[n]


class _RecurrenceTable:
    """
    Append-only table of canonical Fractions defined by a linear recurrence.

    Alongside the Fractions the table keeps every value scaled to the lcm of
    all denominators seen so far, so the recurrence sums are integer dot
    products. Each appended value is normalized once, on entry.
    """

    def __init__(self, initial, pascal=None):
        first = Fraction(initial)
        self.values = [first]
        self.pascal = pascal or PASCAL
        self._common_den = first.denominator
        self._scaled = [first.numerator]
        self._lock = threading.Lock()

    @property
    def computed_up_to(self):
        return len(self.values) - 1

    def get(self, m):
        if m < 0:
            raise ValueError(f"index must be >= 0, got {m}")
        if m > self.computed_up_to:
            with self._lock:
                start = self.computed_up_to
                while self.computed_up_to < m:
                    self._append(self._next_value(self.computed_up_to + 1))
                logger.debug(
                    f"{type(self).__name__} extended from {start} to {m}, "
                    f"common denominator {self._common_den.bit_length()} bits"
                )
        return self.values[m]

    def prefix(self, m):
        """values[0..m], extending as needed."""
        self.get(m)
        return self.values[: m + 1]

    def _weighted_sum(self, weights, m):
        """sum_{j=1..m} weights[j] * values[m-j], scaled by the common denominator."""
        scaled = self._scaled
        return sum(weights[j] * scaled[m - j] for j in range(1, m + 1))

    def _append(self, value):
        new_den = lcm(self._common_den, value.denominator)
        factor = new_den // self._common_den
        if factor != 1:
            self._scaled = [s * factor for s in self._scaled]
            self._common_den = new_den
        self._scaled.append(value.numerator * (new_den // value.denominator))
        self.values.append(value)

    def _next_value(self, m):
        raise NotImplementedError


class EmTable(_RecurrenceTable):
    """Memoized e_0..e_M; values[0] = 0 and values[m] > 0 for m >= 1."""

    def __init__(self, pascal=None):
        super().__init__(0, pascal=pascal)

    def _next_value(self, m):
        power = 1 << (m + 1)
        total = self._weighted_sum(self.pascal.row(m + 1), m)
        den = self._common_den
        return Fraction(power * den + total, (power - 2) * den)


class CmTable(_RecurrenceTable):
    """Memoized c_0(s)..c_M(s) for a fixed integer s >= 1."""

    def __init__(self, s, pascal=None):
        if s < 1:
            raise ValueError(
                f"c_m(s) is only tabulated for integer s >= 1, got s={s}"
            )
        self.s = s
        super().__init__(1, pascal=pascal)

    def _next_value(self, m):
        total = self._weighted_sum(self.pascal.row(m), m)
        return Fraction(total, ((1 << (m + self.s)) - 2) * self._common_den)


@lru_cache(maxsize=None)
def default_em_table():
    """Process-wide e_m table."""
    return EmTable()


@lru_cache(maxsize=None)
def default_cm_table(s):
    """Process-wide c_m(s) table for one integer s."""
    return CmTable(s)


def e_exact(m, table=None):
    """Exact e_m, extending the table as needed."""
    return (table or default_em_table()).get(m)


def c_exact(s, m, table=None):
    """Exact c_m(s) for integer s >= 1."""
    if s < 1:
        raise ValueError(
            f"c_m(s) needs s >= 1 (2^(m+s) - 2 may vanish otherwise), got s={s}"
        )
    if table is None:
        table = default_cm_table(s)
    elif table.s != s:
        raise ValueError(f"table holds c_m({table.s}), asked for s={s}")
    return table.get(m)


def pochhammer_ratio(s, m):
    """(s)_m / m! = C(s+m-1, m) for integer s >= 1."""
    if s < 1:
        raise ValueError(f"pochhammer_ratio needs s >= 1, got s={s}")
    if m < 0:
        raise ValueError(f"pochhammer_ratio needs m >= 0, got m={m}")
    return Fraction(binomial(s + m - 1, m))


def e_exact_alternate(m):
    """
    e_m from the derivative form of the recurrence,

        e_m = 2^{m+1}/(2^{m+1}-2)
              + (2^{m+1}-2)^{-1} sum_{j=1..m} C(m,j) (m+1)/(m-j+1) e_{m-j},

    computed from scratch with plain Fractions. Independent of EmTable; used
    to cross-check it on small m.
    """
    if m < 0:
        raise ValueError(f"index must be >= 0, got {m}")
    values = [Fraction(0)]
    for k in range(1, m + 1):
        power = 1 << (k + 1)
        row = PASCAL.row(k)
        total = sum(
            row[j] * Fraction(k + 1, k - j + 1) * values[k - j]
            for j in range(1, k + 1)
        )
        values.append(Fraction(power, power - 2) + total / (power - 2))
    return values[m]


def recurrence_residuals(m_max, table=None):
    """
    Exact residuals (2^{m+1}-2) e_m - sum_j C(m+1,j) e_{m-j} - 2^{m+1}
    for m = 1..m_max, recomputed from the stored Fractions.
    """
    table = table or default_em_table()
    values = table.prefix(m_max)
    common = 1
    for value in values:
        common = lcm(common, value.denominator)
    scaled = [v.numerator * (common // v.denominator) for v in values]

    residuals = []
    for m in range(1, m_max + 1):
        power = 1 << (m + 1)
        row = table.pascal.row(m + 1)
        total = sum(row[j] * scaled[m - j] for j in range(1, m + 1))
        residuals.append(
            Fraction((power - 2) * scaled[m] - total - power * common, common)
        )
    return residuals
