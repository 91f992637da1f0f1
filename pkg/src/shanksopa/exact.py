"""Exact rationals and rigorous rational interval enclosures.

Rationals are plain :class:`fractions.Fraction` values.  :class:`Interval`
is a closed interval with rational endpoints; every operation returns an
interval that contains the exact image of its operands.  Endpoints whose
denominators outgrow ``DENOM_CAP`` are rounded outward onto the dyadic
grid ``2**-DENOM_BITS`` so long multiplication chains stay cheap.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Union

DENOM_BITS = 256
DENOM_CAP = 1 << DENOM_BITS

Number = Union[int, Fraction]


class UndecidedError(ArithmeticError):
    """An enclosure was too wide to decide a comparison."""


def as_fraction(x) -> Fraction:
    """Coerce ints, Fractions and exact strings ("p/q", "0.125") to Fraction.

    Floats are rejected: silently turning 0.1 into its binary expansion is a
    classic way to get a "certificate" for the wrong number.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)) and not isinstance(x, bool):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot convert {type(x).__name__} to an exact rational")


def format_fraction(x: Fraction) -> str:
    """Serialize as the exact string ``p/q`` (denominator always present)."""
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def parse_fraction(s: str) -> Fraction:
    return Fraction(s.strip())


def _floor_dyadic(x: Fraction, bits: int) -> Fraction:
    return Fraction(math.floor(x * (1 << bits)), 1 << bits)


def _ceil_dyadic(x: Fraction, bits: int) -> Fraction:
    return Fraction(math.ceil(x * (1 << bits)), 1 << bits)


@dataclass(frozen=True)
class Interval:
    """Closed interval ``[lo, hi]`` with rational endpoints."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        object.__setattr__(self, "lo", as_fraction(self.lo))
        object.__setattr__(self, "hi", as_fraction(self.hi))
        if self.lo > self.hi:
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]")

    @classmethod
    def point(cls, x) -> Interval:
        x = as_fraction(x)
        return cls(x, x)

    @staticmethod
    def coerce(x) -> Interval:
        return x if isinstance(x, Interval) else Interval.point(x)

    # -- inspection -------------------------------------------------------
    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def is_point(self) -> bool:
        return self.lo == self.hi

    def __contains__(self, x) -> bool:
        if isinstance(x, Interval):
            return self.lo <= x.lo and x.hi <= self.hi
        if isinstance(x, float):
            x = Fraction(x)
        return self.lo <= x <= self.hi

    def within(self, lo, hi) -> bool:
        """True when the whole enclosure lies in ``[lo, hi]``."""
        return as_fraction(lo) <= self.lo and self.hi <= as_fraction(hi)

    def certainly_gt(self, other) -> bool:
        other = Interval.coerce(other)
        return self.lo > other.hi

    def certainly_lt(self, other) -> bool:
        other = Interval.coerce(other)
        return self.hi < other.lo

    # -- rounding ---------------------------------------------------------
    def round_outward(self, bits: int = DENOM_BITS) -> Interval:
        """Snap endpoints outward to multiples of ``2**-bits``."""
        lo, hi = self.lo, self.hi
        if lo.denominator > (1 << bits):
            lo = _floor_dyadic(lo, bits)
        if hi.denominator > (1 << bits):
            hi = _ceil_dyadic(hi, bits)
        return Interval(lo, hi)

    def _capped(self) -> Interval:
        if self.lo.denominator > DENOM_CAP or self.hi.denominator > DENOM_CAP:
            return self.round_outward(DENOM_BITS)
        return self

    # -- arithmetic -------------------------------------------------------
    def __neg__(self) -> Interval:
        return Interval(-self.hi, -self.lo)

    def __add__(self, other) -> Interval:
        o = Interval.coerce(other)
        return Interval(self.lo + o.lo, self.hi + o.hi)._capped()

    __radd__ = __add__

    def __sub__(self, other) -> Interval:
        o = Interval.coerce(other)
        return Interval(self.lo - o.hi, self.hi - o.lo)._capped()

    def __rsub__(self, other) -> Interval:
        return Interval.coerce(other) - self

    def __mul__(self, other) -> Interval:
        o = Interval.coerce(other)
        products = (self.lo * o.lo, self.lo * o.hi, self.hi * o.lo, self.hi * o.hi)
        return Interval(min(products), max(products))._capped()

    __rmul__ = __mul__

    def __truediv__(self, other) -> Interval:
        o = Interval.coerce(other)
        if o.lo <= 0 <= o.hi:
            raise ZeroDivisionError("interval divisor contains zero")
        return self * Interval(1 / o.hi, 1 / o.lo)

    def __rtruediv__(self, other) -> Interval:
        return Interval.coerce(other) / self

    def __pow__(self, n: int) -> Interval:
        if not isinstance(n, int) or n < 0:
            raise ValueError("only non-negative integer powers are supported")
        if n % 2 == 1 or self.lo >= 0:
            return Interval(min(self.lo**n, self.hi**n), max(self.lo**n, self.hi**n))._capped()
        if self.hi <= 0:
            return Interval(self.hi**n, self.lo**n)._capped()
        return Interval(0, max(self.lo**n, self.hi**n))._capped()

    def sqrt(self, width=Fraction(1, 10**40)) -> Interval:
        if self.lo < 0:
            raise ValueError("sqrt of an interval reaching below zero")
        lo = Fraction(0) if self.lo == 0 else radical_enclosure(self.lo, width).lo
        hi = radical_enclosure(self.hi, width).hi if self.hi > 0 else Fraction(0)
        return Interval(lo, hi)

    # -- output -----------------------------------------------------------
    def __float__(self) -> float:
        return float(self.mid)

    def __str__(self) -> str:
        return f"[{format_fraction(self.lo)}, {format_fraction(self.hi)}]"

    def to_json(self) -> dict:
        return {"lo": format_fraction(self.lo), "hi": format_fraction(self.hi)}


def radical_enclosure(q, width) -> Interval:
    """Enclose ``sqrt(q)`` by ``[lo, hi]`` with ``lo**2 <= q <= hi**2``.

    Uses an integer square root on the dyadic grid ``2**-p`` with the
    smallest ``p`` for which ``2**-p <= width``.
    """
    q = as_fraction(q)
    width = as_fraction(width)
    if q < 0:
        raise ValueError("radical_enclosure needs q >= 0")
    if width <= 0:
        raise ValueError("width must be positive")
    p = 0
    while Fraction(1, 1 << p) > width:
        p += 1
    scaled = q * (1 << (2 * p))
    s = math.isqrt(math.floor(scaled))
    lo = Fraction(s, 1 << p)
    if s * s == scaled:
        return Interval(lo, lo)
    return Interval(lo, Fraction(s + 1, 1 << p))


# 50 correct digits of pi, truncated; hi = lo + 10**-50.
PI_DIGITS = "3.14159265358979323846264338327950288419716939937510"
PI = Interval(Fraction(PI_DIGITS), Fraction(PI_DIGITS) + Fraction(1, 10**50))


def chu_vandermonde(k: int) -> tuple[int, int]:
    """Both sides of ``sum_j C(k, j)**2 == C(2k, k)``."""
    if k < 0:
        raise ValueError("k must be non-negative")
    return sum(math.comb(k, j) ** 2 for j in range(k + 1)), math.comb(2 * k, k)


def truncate_decimal(x: Fraction, digits: int = 3) -> tuple[Fraction, Fraction]:
    """Bracket ``x`` by decimals with ``digits`` places (round toward zero for lo)."""
    scale = 10**digits
    lo = Fraction(math.floor(x * scale), scale)
    hi = lo if lo == x else lo + Fraction(1, scale)
    return lo, hi


def decimal_str(x: Fraction, digits: int = 3) -> str:
    """Exact decimal rendering of a value already on the ``10**-digits`` grid."""
    scale = 10**digits
    n = x * scale
    if n.denominator != 1:
        raise ValueError(f"{x} is not a multiple of 10**-{digits}")
    n = int(n)
    sign = "-" if n < 0 else ""
    n = abs(n)
    return f"{sign}{n // scale}.{n % scale:0{digits}d}"
