from hypothesis import given
import hypothesis.strategies as st
import pytest

from quadfact.bipoly import (BiPoly, QuadPoly, additive_diff_factors, difference_poly,
                             dickson_diff_factors, dickson_sum_factors, discriminant_x,
                             divide_monic_in_x, divides, product, quad_factors_exhaustive,
                             quad_factors_rational, quartic_split, remark_b4_factors,
                             remark_b5_factors)
from quadfact.config import BudgetExceeded
from quadfact.families import ADDITIVE, SQUARED_ADDITIVE, FamilyTag
from quadfact.field import GF, rationals
from quadfact.parsing import parse_poly
from quadfact.unipoly import UniPoly, dickson

from conftest import elements, polys

Q = rationals()
F3, F5 = GF(3), GF(5)


def P(text, K=Q):
    return parse_poly(text, K)


def B(K, terms):
    return BiPoly.from_terms(K, {k: K.coerce(v) for k, v in terms.items()})


def strs(qs):
    return [str(q) for q in qs]


def test_difference_poly_examples():
    assert str(difference_poly(P("x^2"), P("x^2"))) == "x^2 - y^2"
    a = Q.coerce(3)
    D = dickson(2, a, Q)
    assert difference_poly(D, -D) == B(Q, {(2, 0): 1, (0, 2): 1, (0, 0): -12})
    assert difference_poly(P("5"), P("5")).is_zero()


def test_exact_division_examples():
    F = difference_poly(P("x^2"), P("x^2"))
    assert divide_monic_in_x(F, B(Q, {(1, 0): 1, (0, 1): -1})) == B(Q, {(1, 0): 1, (0, 1): 1})
    assert divide_monic_in_x(F, B(Q, {(1, 0): 1, (0, 1): -1, (0, 0): 1})) is None
    h = P("x^3+x^2+x", F3)
    q = B(F3, {(2, 0): 1, (1, 1): -2, (0, 2): 1, (1, 0): -2, (0, 1): -2, (0, 0): 1})
    assert divide_monic_in_x(difference_poly(h, h), q) == B(F3, {(1, 0): 1, (0, 1): -1})


def test_oracle_examples():
    assert strs(quad_factors_exhaustive(difference_poly(P("x^2", F3), P("x^2", F3)))) == \
        ["x + y", "x + 2*y", "x^2 + 2*y^2"]
    F2 = GF(2)
    h = P("x^4 + x^2", F2)
    found = strs(quad_factors_exhaustive(difference_poly(h, h)))
    for want in ("x + y", "x + y + 1", "x^2 + y^2 + x + y"):
        assert want in found
    assert strs(quad_factors_exhaustive(difference_poly(P("x^3", F5), P("x^3", F5)))) == \
        ["x + 4*y", "x^2 + x*y + y^2"]
    with pytest.raises(BudgetExceeded):
        quad_factors_exhaustive(difference_poly(P("x^2"), P("x^2")))


@given(st.sampled_from([GF(2), GF(3), GF(2, 2)]), st.data())
def test_specialize_matches_brute_force(K, data):
    f = data.draw(polys(K, 1, 4, monic=True))
    g = data.draw(polys(K, 1, 4))
    F = difference_poly(f, g)
    assert quad_factors_exhaustive(F) == quad_factors_exhaustive(F, method="brute")


@given(st.sampled_from([GF(3), GF(5), GF(2, 2)]), st.data())
def test_every_oracle_factor_divides(K, data):
    f = data.draw(polys(K, 1, 4, monic=True))
    g = data.draw(polys(K, 1, 4))
    F = difference_poly(f, g)
    for q in quad_factors_exhaustive(F):
        assert divides(q.to_bipoly(), F)


@given(st.data())
def test_product_divides_back(data):
    K = GF(5)
    f = data.draw(polys(K, 1, 3, monic=True))
    q = BiPoly.from_x(f) - BiPoly.from_y(data.draw(polys(K, 1, 3)))
    r = BiPoly.from_x(data.draw(polys(K, 1, 2, monic=True))) + BiPoly.Y(K)
    assert divide_monic_in_x(q * r, r) == q


def test_dickson_difference_factors():
    a = Q.coerce(2)
    X, Y = BiPoly.X(Q), BiPoly.Y(Q)
    got = dickson_diff_factors(3, a, Q)
    assert got == [X - Y, X * X + X * Y + Y * Y + BiPoly.const(Q, Q.coerce(-6))]
    F5 = GF(5)
    b = F5.coerce(3)
    X, Y = BiPoly.X(F5), BiPoly.Y(F5)
    D = dickson(4, b, F5)
    fs = dickson_diff_factors(4, b, F5)
    assert product(fs, F5) == difference_poly(D, D)
    assert X * X + Y * Y + BiPoly.const(F5, F5.coerce(-12)) in fs
    assert dickson_diff_factors(2, b, F5) == [X - Y, X + Y]


def test_dickson_sum_factors():
    F9 = GF(3, 2)
    for a in range(3):
        got = dickson_sum_factors(2, F9.from_int(a), F9)
        want = B(F9, {(2, 0): 1, (0, 2): 1, (0, 0): -a})
        assert [q.to_bipoly() for q in got] == [want]
    F49 = GF(7, 2)          # sqrt(2) in F_7, xi of order 8 in F_49
    a = F49.from_int(3)
    got = dickson_sum_factors(4, a, F49)
    D = dickson(4, a, F49)
    assert product([q.to_bipoly() for q in got], F49) == BiPoly.from_x(D) + BiPoly.from_y(D)
    assert len(got) == 2
    # over F_7 itself xi is missing but xi + 1/xi = +-sqrt(2) is not: the traces suffice
    F7 = GF(7)
    got7 = dickson_sum_factors(4, F7.from_int(3), F7)
    D7 = dickson(4, F7.from_int(3), F7)
    assert product([q.to_bipoly() for q in got7], F7) == BiPoly.from_x(D7) + BiPoly.from_y(D7)
    assert [str(q) for q in dickson_sum_factors(2, F9.zero, F9)] == ["x^2 + y^2"]


def test_additive_factors():
    tag = FamilyTag(ADDITIVE, 3, (1,), 1, 0, UniPoly.x(F3))
    got = sorted(str(q) for q in additive_diff_factors(tag))
    assert got == ["x + 2*y", "x + 2*y + 1", "x + 2*y + 2"]
    tag = FamilyTag(SQUARED_ADDITIVE, 6, (0, 0), 1, 0, UniPoly.x(F3))
    got = additive_diff_factors(tag)
    h = tag.h()
    assert product(got, F3) == difference_poly(h, h)


def test_remark_b4():
    fs = remark_b4_factors(3, 1, F3)
    assert [str(F) for F in fs.factors] == ["x + 2*y", "x^2 + x*y + y^2 + x + y + 1"]
    fs = remark_b4_factors(5, 1, F5)
    assert len(fs.factors) == 3 and fs.ctx == F5
    for q in fs.factors[1:]:
        disc = discriminant_x(q)
        assert disc.degree == 1 and disc.coeff(0) == 0


def test_remark_b5():
    F2, F4 = GF(2), GF(2, 2)
    facs, irreducible = remark_b5_factors(0, F2)
    assert not irreducible
    t = F4.gen().v
    facs, irreducible = remark_b5_factors(t, F4)
    solvable = any(F4.add(F4.mul(z, z), z) == t for z in F4.lex_elements())
    assert irreducible == (not solvable)


def test_quartic_split():
    X, Y = BiPoly.X(Q), BiPoly.Y(Q)
    S = X * X + Y * Y
    assert quartic_split(S * S) == (QuadPoly.from_bipoly(S), QuadPoly.from_bipoly(S))
    t2 = BiPoly.const(Q, Q.coerce(3))
    Q4 = (X * X - Y * Y) * (X * X - Y * Y) - (X * X + Y * Y) * t2 * BiPoly.const(Q, Q.coerce(2)) + t2 * t2
    a, b = quartic_split(Q4)
    assert a.to_bipoly() * b.to_bipoly() == Q4
    # X^4 + Y + 1 over F3 has no quadratic splitting
    F = BiPoly.from_x(P("x^4+1", F3)) + BiPoly.Y(F3)
    assert quartic_split(F) is None
    assert quad_factors_exhaustive(F) == []


def test_rational_search():
    got = strs(quad_factors_rational(difference_poly(P("x^4"), P("-4*x^4"))))
    assert got == ["x^2 - 2*x*y + 2*y^2", "x^2 + 2*x*y + 2*y^2"]
