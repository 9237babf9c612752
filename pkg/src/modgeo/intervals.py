"""Rational interval and complex rectangle arithmetic.

Endpoints are Fractions, so every enclosure is exact: a computed
interval certifiably contains the true value.  Used to decide signs and
nonvanishing of algebraic expressions by refining root enclosures; an
interval that excludes 0 is a proof.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction


@dataclass(frozen=True)
class Interval:
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        object.__setattr__(self, "lo", Fraction(self.lo))
        object.__setattr__(self, "hi", Fraction(self.hi))
        assert self.lo <= self.hi

    @staticmethod
    def point(x) -> "Interval":
        x = Fraction(x)
        return Interval(x, x)

    def __add__(self, other):
        other = _as_interval(other)
        return Interval(self.lo + other.lo, self.hi + other.hi)

    __radd__ = __add__

    def __neg__(self):
        return Interval(-self.hi, -self.lo)

    def __sub__(self, other):
        return self + (-_as_interval(other))

    def __rsub__(self, other):
        return _as_interval(other) + (-self)

    def __mul__(self, other):
        other = _as_interval(other)
        products = (
            self.lo * other.lo,
            self.lo * other.hi,
            self.hi * other.lo,
            self.hi * other.hi,
        )
        return Interval(min(products), max(products))

    __rmul__ = __mul__

    def inverse(self) -> "Interval":
        assert self.excludes_zero(), "cannot invert an interval containing 0"
        return Interval(1 / self.hi, 1 / self.lo)

    def __truediv__(self, other):
        return self * _as_interval(other).inverse()

    def width(self) -> Fraction:
        return self.hi - self.lo

    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def contains_zero(self) -> bool:
        return self.lo <= 0 <= self.hi

    def excludes_zero(self) -> bool:
        return self.lo > 0 or self.hi < 0

    def sign(self) -> int:
        """+1 / -1 when certain, 0 when the interval straddles zero."""
        if self.lo > 0:
            return 1
        if self.hi < 0:
            return -1
        return 0


def _as_interval(x) -> Interval:
    if isinstance(x, Interval):
        return x
    return Interval.point(x)


@dataclass(frozen=True)
class Box:
    """Axis-aligned rectangle enclosing a complex number."""

    re: Interval
    im: Interval

    @staticmethod
    def point(re, im=0) -> "Box":
        return Box(Interval.point(re), Interval.point(im))

    def __add__(self, other):
        other = _as_box(other)
        return Box(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self):
        return Box(-self.re, -self.im)

    def __sub__(self, other):
        return self + (-_as_box(other))

    def __rsub__(self, other):
        return _as_box(other) + (-self)

    def __mul__(self, other):
        other = _as_box(other)
        return Box(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def conjugate(self) -> "Box":
        return Box(self.re, -self.im)

    def excludes_zero(self) -> bool:
        return self.re.excludes_zero() or self.im.excludes_zero()

    def width(self) -> Fraction:
        return max(self.re.width(), self.im.width())


def _as_box(x) -> Box:
    if isinstance(x, Box):
        return x
    if isinstance(x, Interval):
        return Box(x, Interval.point(0))
    return Box.point(x)


def sqrt_interval(iv: Interval, bits: int = 64) -> Interval:
    """Enclosure of sqrt over a nonnegative interval, to ~2^-bits."""
    assert iv.lo >= 0
    return Interval(_sqrt_lower(iv.lo, bits), _sqrt_upper(iv.hi, bits))


def _sqrt_lower(x: Fraction, bits: int) -> Fraction:
    if x == 0:
        return Fraction(0)
    n, d = x.numerator, x.denominator
    scale = 1 << bits
    r = math.isqrt(n * d * scale * scale)
    return Fraction(r, d * scale)


def _sqrt_upper(x: Fraction, bits: int) -> Fraction:
    if x == 0:
        return Fraction(0)
    n, d = x.numerator, x.denominator
    scale = 1 << bits
    r = math.isqrt(n * d * scale * scale)
    return Fraction(r + 1, d * scale)


def eval_poly_interval(coeffs, x):
    """Horner evaluation of a polynomial (ascending Fraction coefficients)
    over an Interval or Box argument."""
    if isinstance(x, Box):
        out = Box.point(0)
    else:
        out = Interval.point(0)
    for c in reversed(list(coeffs)):
        out = out * x + _const_like(c, x)
    return out


def _const_like(c, x):
    if isinstance(x, Box):
        return _as_box(c)
    return _as_interval(c)
