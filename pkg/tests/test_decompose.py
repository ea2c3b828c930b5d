from hypothesis import given
import hypothesis.strategies as st

from quadfact.decompose import (base_expansion, common_left_component, decompositions,
                                left_component, linear_equivalent, right_component,
                                right_linear_shift_match)
from quadfact.families import (ADDITIVE, DICKSON, HALF_ADDITIVE, match_family)
from quadfact.field import GF, rationals
from quadfact.parsing import parse_poly
from quadfact.unipoly import UniPoly, compose, dickson

from conftest import elements, polys

Q = rationals()


def P(text, K=Q):
    return parse_poly(text, K)


def test_right_component_examples():
    assert right_component(P("x^6+1"), 3) == P("x^3")
    assert right_component(P("x^6+1"), 2) == P("x^2")
    a = Q.coerce(2)
    f1 = right_component(dickson(6, a, Q), 2)
    assert f1 == P("x^2")
    assert compose(left_component(dickson(6, a, Q), f1), f1) == dickson(6, a, Q)


def test_base_expansion_and_left_component():
    assert base_expansion(P("x^3+x"), P("x^3+x")) == [P("0"), P("1")]
    assert base_expansion(P("x^6+1"), P("x^3")) == [P("1"), P("0"), P("1")]
    assert base_expansion(P("x^2+x"), P("x^2")) == [P("x"), P("1")]
    assert left_component(P("x^6+1"), P("x^3")) == P("x^2+1")
    f = P("x^5 - 3*x + 1")
    assert left_component(f, P("x")) == f
    assert left_component(P("x^6+x"), P("x^3")) is None


def test_common_left_component_examples():
    f = P("x^4 + x^3 + 2")
    dec = common_left_component(f, f)
    assert dec.phi == f or compose(dec.phi, dec.f1) == f
    assert dec.f1 == dec.g1
    phi = P("x^2+1")
    dec = common_left_component(compose(phi, P("x^3")), compose(phi, P("x^3+x")))
    assert dec.phi == phi
    dec = common_left_component(P("x^3"), P("x^2"))
    assert dec.phi == P("x") and dec.f1 == P("x^3") and dec.g1 == P("x^2")


def test_linear_equivalence_examples():
    L, R = linear_equivalent(P("2*x^2+4*x+5"), P("x^2"))
    assert L == P("2*x+3") and R == P("x+1")
    L, R = linear_equivalent(P("x^3"), P("x^3"))
    assert L == P("x") and R == P("x")
    assert linear_equivalent(P("x^3+x"), P("x^3")) is None


def test_family_examples():
    F3, F5 = GF(3), GF(5)
    tag = match_family(P("x^3+x^2+x", F3))
    assert tag.family == HALF_ADDITIVE and tag.a == 1
    tag = match_family(P("x^5-2*x", F5))
    assert tag.family == ADDITIVE and tag.a == 2
    tag = match_family(P("x^4"))
    assert tag.family == DICKSON and tag.n == 4 and tag.a == 0


@given(st.sampled_from([GF(5), Q]), st.data())
def test_tame_decomposition_recovered(K, data):
    top = 4 if K.p else 5
    phi = data.draw(polys(K, 1, top))
    f1 = data.draw(polys(K, 1, top))
    f = compose(phi, f1)
    found = decompositions(f)
    assert all(compose(a, b) == f for a, b in found)
    assert any(b.degree == f1.degree for _, b in found)


@given(st.sampled_from([GF(3), GF(7), Q]), st.data())
def test_shift_match(K, data):
    phi = data.draw(polys(K, 1, 4))
    u = data.draw(elements(K).filter(lambda v: v != 0))
    v = data.draw(elements(K))
    moved = compose(phi, UniPoly(K, [v, u]))
    matches = right_linear_shift_match(phi, moved)
    assert (u, v) in matches
    assert all(compose(phi, UniPoly(K, [b, a])) == moved for a, b in matches)
