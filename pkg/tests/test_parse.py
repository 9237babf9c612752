from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from modgeo.errors import ParseError
from modgeo.exact import QuadElem
from modgeo.parse import (
    format_intpoly,
    format_value,
    parse_intpoly,
    parse_slope,
    parse_value,
)
from modgeo.slopes import INF, GenericSlope

SQUAREFREE = [2, 3, 5, 7, 10, 13]


def test_basic_forms():
    assert parse_value("7/3") == Fraction(7, 3)
    assert parse_value("sqrt(8)") == QuadElem(2, 0, 2)
    assert parse_value("(1+2*sqrt(5))/3") == QuadElem(5, Fraction(1, 3), Fraction(2, 3))
    assert parse_value(" ( 1 + 2 * sqrt( 5 ) ) / 3 ") == parse_value("(1+2*sqrt(5))/3")
    assert parse_value("-sqrt(2)") == QuadElem(2, 0, -1)
    assert parse_value("sqrt(4)") == Fraction(2)


def test_errors():
    for bad in ["sqrt(2)+sqrt(3)", "sqrt(-1)", "1/0", "foo", "1+", "sqrt(2", ""]:
        with pytest.raises(ParseError):
            parse_value(bad)


def test_slopes():
    assert parse_slope("inf") is INF
    assert parse_slope("generic:e") == GenericSlope("e")
    assert parse_slope("3/4") == Fraction(3, 4)
    with pytest.raises(ParseError):
        parse_slope("generic:")


def test_format_examples():
    assert format_value(Fraction(7, 3)) == "7/3"
    assert format_value(QuadElem(2, 0, 1)) == "sqrt(2)"
    assert format_value(QuadElem(5, Fraction(1, 2), Fraction(1, 2))) == "(1+sqrt(5))/2"
    assert format_value(QuadElem(2, 3, -2)) == "3-2*sqrt(2)"
    assert format_value(QuadElem(2, -1, 1)) == "-1+sqrt(2)"
    assert format_value(QuadElem(2, 0, Fraction(1, 2))) == "sqrt(2)/2"


@given(
    st.sampled_from(SQUAREFREE),
    st.fractions(min_value=-30, max_value=30, max_denominator=12),
    st.fractions(min_value=-30, max_value=30, max_denominator=12),
)
def test_roundtrip_quad(d, a, b):
    if b == 0:
        value = a
    else:
        value = QuadElem(d, a, b)
    assert parse_value(format_value(value)) == value


@given(st.fractions(max_denominator=1000))
def test_roundtrip_rational(x):
    assert parse_value(format_value(x)) == x


def test_intpoly_roundtrip():
    cases = [
        (-2, 0, 0, 0, 1),
        (1, 0, -10, 0, 1),
        (1, 0, 1),
        (-3, 1),
        (5,),
        (0, -2, 0, 1),
    ]
    for coeffs in cases:
        assert parse_intpoly(format_intpoly(coeffs)) == coeffs


def test_intpoly_inputs():
    assert parse_intpoly("x^4-2") == (-2, 0, 0, 0, 1)
    assert parse_intpoly("x^4 - 10*x^2 + 1") == (1, 0, -10, 0, 1)
    assert parse_intpoly("x^4-10x^2+1") == (1, 0, -10, 0, 1)
    assert parse_intpoly("-x+3") == (3, -1)
    with pytest.raises(ParseError):
        parse_intpoly("x^")
    with pytest.raises(ParseError):
        parse_intpoly("y+1")
