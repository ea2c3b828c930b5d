from fractions import Fraction

import pytest
from hypothesis import given
import hypothesis.strategies as st

from quadfact.field import GF, FieldError, rationals
from quadfact.families import CHAR2_QUARTIC, family_poly
from quadfact.parsing import PolySyntaxError, format_poly, parse_elem, parse_field, parse_poly
from quadfact.unipoly import dickson

from conftest import fields_with_q, polys


def test_field_specs():
    assert parse_field("Q").p == 0
    assert parse_field("GF(7)").q == 7
    assert parse_field("GF(3^2)").q == 9
    assert parse_field("GF(9)") == GF(3, 2)
    K = parse_field("GF(2^2;1,1,1)")
    assert K.modulus == (1, 1, 1)
    for bad in ("GF(6)", "GF(3^2;1,0,0)", "R", "GF(2^2;1,1)"):
        with pytest.raises(FieldError):
            parse_field(bad)


def test_examples():
    Q = rationals()
    assert parse_poly("x^3 - 3*x", Q) == dickson(3, Q.one, Q)
    F4 = GF(2, 2)
    t = F4.gen().v
    assert parse_poly("x^4+(1+t)*x^2+t*x", F4) == family_poly(F4, CHAR2_QUARTIC, 4, (t,))
    with pytest.raises(PolySyntaxError) as err:
        parse_poly("x^^2", Q)
    assert err.value.column == 3


def test_coefficients_outside_field():
    with pytest.raises((FieldError, ZeroDivisionError, ValueError)):
        parse_poly("x + 1/2", GF(2))
    assert parse_poly("x/2", GF(3)) == parse_poly("2*x", GF(3))
    assert parse_elem("3/5", rationals()) == Fraction(3, 5)


@given(fields_with_q, st.data())
def test_print_parse_fixed_point(K, data):
    f = data.draw(polys(K, max_deg=6))
    s = format_poly(f)
    assert parse_poly(s, K) == f
    assert format_poly(parse_poly(s, K)) == s
