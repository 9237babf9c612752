"""Classification of geodesics by their stabilizer groups.

A point is a pair of distinct eigenline slopes (s_x, s_y).  The coarse
(possibly non-reductive) class is decided purely from the slope pair:

  * both slopes rational        -> conjugate of the diagonal split torus,
  * a Galois-conjugate pair     -> norm torus of a real quadratic field,
  * exactly one rational slope  -> Borel subgroup,
  * anything else               -> all of GL2.

Promotion to the reductive class sends Borel to GL2 and fixes the rest;
the dynamical type is read off the reductive class.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from . import qforms
from .errors import DegeneratePointError, NotInvertibleError
from .exact import QuadElem, RationalLike, minpoly
from .slopes import INF, Slope, as_slope, is_projective_rational, slope_eq

SPLIT_TORUS = "split_torus"
RM_TORUS = "rm_torus"
BOREL = "borel"
FULL_GL2 = "full_gl2"

NON_CLOSED = "non_closed"
CLOSED_RM = "closed_rm"
CLOSED_CUSPIDAL = "closed_cuspidal"


@dataclass(frozen=True)
class GeodesicPoint:
    """Two distinct slopes in P^1; the eigenline data of one geodesic."""

    s_x: Slope
    s_y: Slope

    def __post_init__(self):
        object.__setattr__(self, "s_x", as_slope(self.s_x))
        object.__setattr__(self, "s_y", as_slope(self.s_y))
        if slope_eq(self.s_x, self.s_y):
            raise DegeneratePointError("the two eigenline slopes must differ")


@dataclass(frozen=True)
class BMTClass:
    kind: str
    d: Optional[int] = None
    conjugator: Optional[tuple] = None
    rational_slope: Optional[str] = None


@dataclass(frozen=True)
class MTClass:
    kind: str
    d: Optional[int] = None


def _column_slope(v1, v2) -> Slope:
    if isinstance(v1, int):
        v1 = Fraction(v1)
    if isinstance(v2, int):
        v2 = Fraction(v2)
    if isinstance(v1, RationalLike) and v1 == 0:
        return INF
    out = v2 / v1
    return Fraction(out) if isinstance(out, int) else out


def point_from_conjugator(m) -> GeodesicPoint:
    """Eigenline slopes of g h0 g^{-1}: the columns of g.

    Entries may be rational or lie in one quadratic field.
    """
    (a, b), (c, d) = m
    det = a * d - b * c
    if not isinstance(det, QuadElem) and det == 0:
        raise NotInvertibleError("matrix is singular")
    return GeodesicPoint(_column_slope(a, c), _column_slope(b, d))


def _rational_line_basis(s) -> tuple[int, int]:
    if s is INF:
        return (0, 1)
    f = Fraction(s)
    return (f.denominator, f.numerator)


def classify_bmt(p: GeodesicPoint) -> BMTClass:
    """The smallest rationally-defined stabilizer class of the point."""
    sx, sy = p.s_x, p.s_y
    rx, ry = is_projective_rational(sx), is_projective_rational(sy)
    if rx and ry:
        cx, cy = _rational_line_basis(sx), _rational_line_basis(sy)
        conj = ((cx[0], cy[0]), (cx[1], cy[1]))
        return BMTClass(SPLIT_TORUS, conjugator=conj)
    if (
        isinstance(sx, QuadElem)
        and isinstance(sy, QuadElem)
        and sx.d == sy.d
        and sx.conjugate() == sy
    ):
        return BMTClass(RM_TORUS, d=sx.d)
    if rx != ry:
        return BMTClass(BOREL, rational_slope="x" if rx else "y")
    return BMTClass(FULL_GL2)


def classify_mt(p: GeodesicPoint) -> MTClass:
    """Minimal reductive class: Borel promotes to GL2, the rest stand."""
    bmt = classify_bmt(p)
    if bmt.kind == SPLIT_TORUS:
        return MTClass(SPLIT_TORUS)
    if bmt.kind == RM_TORUS:
        return MTClass(RM_TORUS, d=bmt.d)
    return MTClass(FULL_GL2)


def dynamical_type(p: GeodesicPoint) -> str:
    mt = classify_mt(p)
    if mt.kind == FULL_GL2:
        return NON_CLOSED
    if mt.kind == RM_TORUS:
        return CLOSED_RM
    return CLOSED_CUSPIDAL


def rm_point_count(D: int, oriented: bool) -> int:
    """Number of real-multiplication points of discriminant D: proper
    classes when oriented, wide classes otherwise."""
    if oriented:
        return len(qforms.proper_classes(D))
    h, _, _ = qforms.wide_class_group(D)
    return h


def quadratic_slope_disc(s: QuadElem) -> int:
    """Discriminant of the primitive integral quadratic vanishing at s."""
    poly = minpoly(s)
    assert len(poly) == 3
    c0, c1, c2 = poly
    return c1 * c1 - 4 * c2 * c0
