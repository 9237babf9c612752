from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from modgeo.intervals import Box, Interval, eval_poly_interval, sqrt_interval
from modgeo.polyutil import (
    RealRoot,
    count_real_roots,
    is_squarefree,
    isolate_roots,
    pdivmod,
    peval,
    pgcd,
    pmul,
    pnormalize,
    primitive_int,
    root_bound,
)


def polys(max_deg=5):
    return st.lists(
        st.fractions(min_value=-9, max_value=9, max_denominator=4),
        min_size=1,
        max_size=max_deg + 1,
    ).map(pnormalize).filter(lambda p: p)


@given(polys(), polys())
def test_division_law(a, b):
    q, r = pdivmod(a, b)
    assert pnormalize(tuple(x for x in _padd(pmul(q, b), r))) == a
    assert len(r) < len(b) or not r


def _padd(p, q):
    n = max(len(p), len(q))
    return tuple(
        (p[k] if k < len(p) else 0) + (q[k] if k < len(q) else 0) for k in range(n)
    )


@given(polys(3), polys(3))
def test_gcd_divides(a, b):
    g = pgcd(a, b)
    if g:
        assert not pdivmod(a, g)[1]
        assert not pdivmod(b, g)[1]


def test_rational_roots_isolated_with_nonroot_split():
    # squarefree with a rational root at 1/2 forces the midpoint-avoidance
    # path during isolation
    p = pnormalize(pmul((Fraction(-1, 2), Fraction(1)), (-2, 0, 1)))
    assert is_squarefree(p)
    ivs = isolate_roots(p)
    assert len(ivs) == 3
    inside = [lo < Fraction(1, 2) < hi for lo, hi in ivs]
    assert sum(inside) == 1


def test_rational_root_refinement():
    p = pnormalize(pmul((Fraction(-1, 2), Fraction(1)), (-2, 0, 1)))
    ivs = isolate_roots(p)
    target = next(iv for iv in ivs if iv[0] < Fraction(1, 2) < iv[1])
    r = RealRoot(p, *target)
    r.refine_below(Fraction(1, 10**6))
    assert r.lo < Fraction(1, 2) < r.hi
    assert r.width() < Fraction(1, 10**6)


def test_count_matches_isolation_degree3():
    cases = [
        ((-2, 0, 0, 1), 1),  # x^3 - 2
        ((0, -1, 0, 1), 3),  # x^3 - x (roots -1, 0, 1)
        ((2, 3, 0, 1), 1),
    ]
    for coeffs, expect in cases:
        p = pnormalize(coeffs)
        assert count_real_roots(p) == expect
        assert len(isolate_roots(p)) == expect


def test_root_bound_contains_roots():
    p = pnormalize((0, -1, 0, 1))
    b = root_bound(p)
    for lo, hi in isolate_roots(p):
        assert -b <= lo and hi <= b


def test_primitive_int():
    assert primitive_int((Fraction(1, 2), Fraction(3, 4))) == (2, 3)
    assert primitive_int((Fraction(-2), Fraction(-4))) == (1, 2)


class TestIntervals:
    def test_arith(self):
        a = Interval(Fraction(1), Fraction(2))
        b = Interval(Fraction(-3), Fraction(1, 2))
        prod = a * b
        assert prod.lo == -6 and prod.hi == 1
        assert (a - a).contains_zero()
        assert (a + b).lo == -2

    def test_inverse(self):
        a = Interval(Fraction(-4), Fraction(-2))
        inv = a.inverse()
        assert inv.lo == Fraction(-1, 2) and inv.hi == Fraction(-1, 4)
        with pytest.raises(AssertionError):
            Interval(Fraction(-1), Fraction(1)).inverse()

    @given(st.fractions(min_value=0, max_value=100, max_denominator=50))
    def test_sqrt_enclosure(self, x):
        iv = sqrt_interval(Interval.point(x), bits=40)
        assert iv.lo * iv.lo <= x <= iv.hi * iv.hi
        assert iv.hi - iv.lo <= Fraction(2, 1 << 40) * (1 + x)

    def test_box_mul_matches_complex(self):
        b1 = Box.point(Fraction(1, 2), Fraction(3))
        b2 = Box.point(Fraction(-2), Fraction(1, 4))
        prod = b1 * b2
        z = complex(0.5, 3) * complex(-2, 0.25)
        assert float(prod.re.lo) == pytest.approx(z.real)
        assert float(prod.im.lo) == pytest.approx(z.imag)

    def test_poly_eval_encloses(self):
        p = (Fraction(-2), Fraction(0), Fraction(1))  # x^2 - 2
        iv = Interval(Fraction(1), Fraction(2))
        out = eval_poly_interval(p, iv)
        # true range on [1, 2] is [-1, 2]; enclosure may be wider
        assert out.lo <= -1 and out.hi >= 2
