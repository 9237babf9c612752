"""Exact arithmetic over Q and real quadratic fields Q(sqrt(d)).

A value is either a ``fractions.Fraction`` (rational) or a ``QuadElem``
representing a + b*sqrt(d) with d squarefree > 1 and b != 0.  Rationals
are never stored as QuadElem: any operation whose result has b == 0
collapses back to Fraction, so "same field" is a syntactic check on d
and "is irrational" is an isinstance check.

All sign determinations are by rational case analysis (compare a^2 with
b^2*d); no floating point is involved anywhere.
"""

from __future__ import annotations

import decimal
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .errors import IncompatibleFieldsError, InvalidRadicandError

RationalLike = (int, Fraction)


def squarefree_split(n: int) -> tuple[int, int]:
    """n = s*s*d with d squarefree; returns (s, d).  Requires n >= 1."""
    if n < 1:
        raise ValueError("squarefree_split needs n >= 1")
    s, d, m = 1, 1, n
    p = 2
    while p * p <= m:
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            if e % 2:
                d *= p
            s *= p ** (e // 2)
        p += 1 if p == 2 else 2
    return s, d * m


def _cmp(x, y) -> int:
    return (x > y) - (x < y)


@dataclass(frozen=True)
class QuadElem:
    """a + b*sqrt(d) with d squarefree > 1 and b != 0 (hence irrational)."""

    d: int
    a: Fraction
    b: Fraction

    def __post_init__(self):
        object.__setattr__(self, "a", Fraction(self.a))
        object.__setattr__(self, "b", Fraction(self.b))
        if self.d < 2 or squarefree_split(self.d)[1] != self.d:
            raise InvalidRadicandError(f"radicand {self.d} is not squarefree > 1")
        if self.b == 0:
            raise ValueError("rational value must be a Fraction, not QuadElem")

    # -- field structure ------------------------------------------------

    def _coerce(self, other) -> tuple[Fraction, Fraction]:
        if isinstance(other, RationalLike):
            return Fraction(other), Fraction(0)
        if isinstance(other, QuadElem):
            if other.d != self.d:
                raise IncompatibleFieldsError(
                    f"mixed radicands sqrt({self.d}) and sqrt({other.d})"
                )
            return other.a, other.b
        return NotImplemented

    def __add__(self, other):
        co = self._coerce(other)
        if co is NotImplemented:
            return NotImplemented
        oa, ob = co
        return make_quad(self.d, self.a + oa, self.b + ob)

    __radd__ = __add__

    def __neg__(self):
        return QuadElem(self.d, -self.a, -self.b)

    def __sub__(self, other):
        co = self._coerce(other)
        if co is NotImplemented:
            return NotImplemented
        oa, ob = co
        return make_quad(self.d, self.a - oa, self.b - ob)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        co = self._coerce(other)
        if co is NotImplemented:
            return NotImplemented
        oa, ob = co
        return make_quad(
            self.d,
            self.a * oa + self.b * ob * self.d,
            self.a * ob + self.b * oa,
        )

    __rmul__ = __mul__

    def invert(self) -> "QuadElem":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverting 0")
        return QuadElem(self.d, self.a / n, -self.b / n)

    def __truediv__(self, other):
        if isinstance(other, RationalLike):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return QuadElem(self.d, self.a / other, self.b / other)
        if isinstance(other, QuadElem):
            return self * other.invert()
        return NotImplemented

    def __rtruediv__(self, other):
        return self.invert() * other

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.invert() ** (-n)
        out: Union[Fraction, QuadElem] = Fraction(1)
        base: Union[Fraction, QuadElem] = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    # -- invariants -----------------------------------------------------

    def conjugate(self) -> "QuadElem":
        """Galois conjugate a - b*sqrt(d)."""
        return QuadElem(self.d, self.a, -self.b)

    def norm(self) -> Fraction:
        return self.a * self.a - self.b * self.b * self.d

    def trace(self) -> Fraction:
        return 2 * self.a

    def sign(self) -> int:
        """Exact sign, by comparing a^2 against b^2*d; never 0."""
        a, b = self.a, self.b
        if b > 0:
            if a >= 0:
                return 1
            return _cmp(b * b * self.d, a * a)
        if a <= 0:
            return -1
        return _cmp(a * a, b * b * self.d)

    # -- order ----------------------------------------------------------

    def _sign_minus(self, other) -> int:
        diff = self - other
        return sign_of(diff)

    def __lt__(self, other):
        return self._sign_minus(other) < 0

    def __le__(self, other):
        return self._sign_minus(other) <= 0

    def __gt__(self, other):
        return self._sign_minus(other) > 0

    def __ge__(self, other):
        return self._sign_minus(other) >= 0

    def __abs__(self):
        return self if self.sign() > 0 else -self

    def __float__(self):
        return float(self.a) + float(self.b) * math.sqrt(self.d)

    def __repr__(self):
        return f"QuadElem({self.d}, {self.a}, {self.b})"


Value = Union[Fraction, QuadElem]


def make_quad(d: int, a, b) -> Value:
    """a + b*sqrt(d) for squarefree d; collapses to Fraction when b == 0."""
    a, b = Fraction(a), Fraction(b)
    if b == 0:
        return a
    return QuadElem(d, a, b)


def normalize_quad(d_raw: int, a=0, b=1) -> Value:
    """Normalized value a + b*sqrt(d_raw).

    The square part of the radicand is pulled into b, so sqrt(8) becomes
    2*sqrt(2); perfect squares and b == 0 collapse to Fraction.
    """
    if not isinstance(d_raw, int) or d_raw < 2:
        raise InvalidRadicandError(f"radicand must be an integer >= 2, got {d_raw!r}")
    s, d = squarefree_split(d_raw)
    a, b = Fraction(a), Fraction(b) * s
    if b == 0 or d == 1:
        return a + b
    return QuadElem(d, a, b)


def sqrt_rational(x) -> Value:
    """Exact square root of a nonnegative rational, when representable."""
    x = Fraction(x)
    if x < 0:
        raise InvalidRadicandError("square root of a negative rational")
    if x == 0:
        return Fraction(0)
    n, m = x.numerator, x.denominator
    if n * m == 1:
        return Fraction(1)
    # sqrt(n/m) = sqrt(n*m)/m
    return normalize_quad(n * m, 0, Fraction(1, m))


def sign_of(x) -> int:
    if isinstance(x, QuadElem):
        return x.sign()
    if isinstance(x, RationalLike):
        return _cmp(x, 0)
    raise TypeError(f"no exact sign for {type(x).__name__}")


def exact_floor(x) -> int:
    """floor of a Fraction or QuadElem, decided by exact comparisons."""
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        return x.numerator // x.denominator
    if isinstance(x, QuadElem):
        n = math.floor(float(x))  # guess only; corrected exactly below
        while x - n < 0:
            n -= 1
        while x - (n + 1) >= 0:
            n += 1
        return n
    raise TypeError(f"no floor for {type(x).__name__}")


def minpoly(x) -> tuple[int, ...]:
    """Primitive integer polynomial (ascending coefficients, positive
    leading coefficient) of minimal degree vanishing at x."""
    if isinstance(x, RationalLike):
        f = Fraction(x)
        return (-f.numerator, f.denominator)
    if not isinstance(x, QuadElem):
        raise TypeError(f"no minimal polynomial for {type(x).__name__}")
    # (x - a)^2 = b^2 d, i.e. x^2 - 2a x + (a^2 - b^2 d)
    c0 = x.a * x.a - x.b * x.b * x.d
    c1 = -2 * x.a
    den = math.lcm(c0.denominator, c1.denominator)
    i0 = int(c0 * den)
    i1 = int(c1 * den)
    g = math.gcd(math.gcd(i0, i1), den)
    return (i0 // g, i1 // g, den // g)


def eval_intpoly(coeffs, x):
    """Evaluate an integer/rational polynomial (ascending) exactly at x."""
    out: Union[Fraction, QuadElem] = Fraction(0)
    for c in reversed(coeffs):
        out = out * x + c
    return out


def to_decimal(x, digits: int = 20) -> str:
    """Decimal rendering of an exact value with the given number of
    significant digits (display only; never used in logic)."""
    with decimal.localcontext() as ctx:
        ctx.prec = digits + 10
        v = _as_decimal(x)
        ctx.prec = digits
        v = +v
    return str(v)


def log_decimal(x, digits: int = 20) -> str:
    """Natural log of a positive exact value, rendered as a decimal."""
    if sign_of(x) <= 0:
        raise ValueError("log of a nonpositive value")
    with decimal.localcontext() as ctx:
        ctx.prec = digits + 10
        v = _as_decimal(x).ln()
        ctx.prec = digits
        v = +v
    return str(v)


def _as_decimal(x) -> decimal.Decimal:
    D = decimal.Decimal
    if isinstance(x, int):
        return D(x)
    if isinstance(x, Fraction):
        return D(x.numerator) / D(x.denominator)
    if isinstance(x, QuadElem):
        a = D(x.a.numerator) / D(x.a.denominator)
        b = D(x.b.numerator) / D(x.b.denominator)
        return a + b * D(x.d).sqrt()
    raise TypeError(f"no decimal value for {type(x).__name__}")
