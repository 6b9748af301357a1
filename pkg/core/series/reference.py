"""
Embedded reference digits of Euler's constant.

Twenty-seven fractional digits, truncated. Used to label tables and to check
that computed enclosures are consistent; never as an input to a computation.
"""

from dataclasses import dataclass
from fractions import Fraction


@dataclass(frozen=True)
class ReferenceDigits:
    digits: str

    @property
    def fraction_digits(self):
        return len(self.digits.split(".")[1])

    def interval(self):
        """[lo, hi) containing gamma: the truncation and one unit above it."""
        lo = Fraction(self.digits)
        return lo, lo + Fraction(1, 10 ** self.fraction_digits)

    def prefix(self, digits):
        if digits > self.fraction_digits:
            raise ValueError(
                f"only {self.fraction_digits} reference digits are embedded"
            )
        return self.digits[: 2 + digits]


GAMMA_REFERENCE = ReferenceDigits("0.577215664901532860606512090")
