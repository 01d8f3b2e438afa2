"""Decimal fixed-point reals backed by Python integers."""

from __future__ import annotations

import math
from dataclasses import dataclass
from decimal import Decimal, localcontext
from fractions import Fraction


@dataclass(frozen=True)
class BigFixed:
    """The real number ``mantissa * 10**-(digits + guard)``.

    ``digits`` is the number of decimal digits the value is meant to be
    correct to; ``guard`` extra digits absorb accumulated rounding.
    """

    mantissa: int
    digits: int
    guard: int

    @property
    def scale(self) -> int:
        return self.digits + self.guard

    @classmethod
    def from_fraction(cls, q, digits: int, guard: int = 10) -> "BigFixed":
        q = Fraction(q)
        num = q.numerator * 10 ** (digits + guard)
        return cls(_round_div(num, q.denominator), digits, guard)

    @classmethod
    def from_string(cls, text: str, digits: int) -> "BigFixed":
        """Parse a plain decimal string; its fractional length fixes the scale."""
        text = text.strip()
        neg = text.startswith("-")
        body = text.lstrip("+-")
        whole, _, frac = body.partition(".")
        mant = int((whole or "0") + frac)
        return cls(-mant if neg else mant, digits, len(frac) - digits)

    def rescale(self, scale: int) -> "BigFixed":
        shift = scale - self.scale
        if shift >= 0:
            mant = self.mantissa * 10 ** shift
        else:
            mant = _round_div(self.mantissa, 10 ** (-shift))
        return BigFixed(mant, self.digits, scale - self.digits)

    def _aligned(self, other: "BigFixed"):
        scale = max(self.scale, other.scale)
        digits = min(self.digits, other.digits)
        a, b = self.rescale(scale), other.rescale(scale)
        return a.mantissa, b.mantissa, digits, scale - digits

    def __add__(self, other: "BigFixed") -> "BigFixed":
        a, b, d, g = self._aligned(other)
        return BigFixed(a + b, d, g)

    def __sub__(self, other: "BigFixed") -> "BigFixed":
        a, b, d, g = self._aligned(other)
        return BigFixed(a - b, d, g)

    def __neg__(self) -> "BigFixed":
        return BigFixed(-self.mantissa, self.digits, self.guard)

    def __abs__(self) -> "BigFixed":
        return BigFixed(abs(self.mantissa), self.digits, self.guard)

    def __mul__(self, other) -> "BigFixed":
        if isinstance(other, BigFixed):
            a, b, d, g = self._aligned(other)
            return BigFixed(_round_div(a * b, 10 ** (d + g)), d, g)
        q = Fraction(other)
        return BigFixed(_round_div(self.mantissa * q.numerator, q.denominator),
                        self.digits, self.guard)

    __rmul__ = __mul__

    def __lt__(self, other: "BigFixed") -> bool:
        a, b, _, _ = self._aligned(other)
        return a < b

    def to_fraction(self) -> Fraction:
        return Fraction(self.mantissa, 10 ** self.scale)

    def to_decimal(self) -> Decimal:
        with localcontext() as ctx:
            ctx.prec = self.scale + 50
            return Decimal(self.mantissa).scaleb(-self.scale)

    def __float__(self) -> float:
        return self.mantissa / 10 ** self.scale

    def log10_abs(self) -> float:
        """``log10 |x|``; ``-scale`` for an exact zero mantissa."""
        if self.mantissa == 0:
            return -float(self.scale)
        n = str(abs(self.mantissa))
        digits = len(n)
        lead = int(n[:17]) / 10 ** (min(17, digits) - 1)
        return math.log10(lead) + digits - 1 - self.scale

    def exact_string(self) -> str:
        """All stored digits; round-trips through :meth:`from_string`."""
        sign = "-" if self.mantissa < 0 else ""
        s = str(abs(self.mantissa)).rjust(self.scale + 1, "0")
        return f"{sign}{s[:-self.scale]}.{s[-self.scale:]}" if self.scale > 0 else sign + s

    def to_string(self, digits: int | None = None) -> str:
        """Rounded to ``digits`` (default: ``self.digits``) places after the point."""
        digits = self.digits if digits is None else digits
        return self.rescale(digits).exact_string()

    def __str__(self) -> str:
        return self.to_string()


def _round_div(a: int, b: int) -> int:
    """``a / b`` rounded to nearest (b > 0)."""
    q, r = divmod(a, b)
    return q + 1 if 2 * r >= b else q
