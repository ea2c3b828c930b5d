import dataclasses

import pytest
from hypothesis import given, settings
import hypothesis.strategies as st

from quadfact.bipoly import QuadPoly, difference_poly, divides, quad_factors_exhaustive
from quadfact.classify import (ConstraintError, classify_pair, construct_case, reduce_frobenius,
                               undo_frobenius, unity_trace_in_field, verify_certificate)
from quadfact.field import GF, rationals
from quadfact.parsing import parse_poly
from quadfact.samples import CONSTRUCTIBLE, Sampler, applicable
from quadfact.unipoly import UniPoly, compose

from conftest import polys

Q = rationals()
F2, F3, F5, F4, F9 = GF(2), GF(3), GF(5), GF(2, 2), GF(3, 2)


def P(text, K):
    return parse_poly(text, K)


def classify(f, g, K, **kw):
    return classify_pair(P(f, K), P(g, K), **kw)


def test_trace_condition():
    assert unity_trace_in_field(F5, 4) and unity_trace_in_field(F5, 6)
    assert unity_trace_in_field(F5, 3) and not unity_trace_in_field(GF(7), 5)
    assert unity_trace_in_field(F3, 4) and not unity_trace_in_field(F3, 5)
    assert [n for n in range(1, 13) if unity_trace_in_field(Q, n)] == [1, 2, 3, 4, 6]


@pytest.mark.parametrize("field,f,g,case,tags", [
    (F5, "x^3", "x^3", "T2b-i", ["T2b-i", "T1a"]),
    (F3, "x^2", "x^2", "T2a", ["T2a", "T2b-i", "T2c", "T1a"]),
    (F3, "x^4+x", "x^2", "NoQuadFactor", []),
    (F3, "x^6+x^3", "x^3", "T3a", None),
    (F3, "x^4", "-x^4", "T2c", ["T2c", "T1b"]),
    (F3, "x^3+x^2+x", "x^3+x^2+x", "T2b-iv", ["T2b-iv", "T1a"]),
    (F2, "x^4+x^2+1", "x^4+x^2+1", "T3b", None),
    (Q, "x^3-3*x", "x^3-3*x", "T2b-i", None),
    (Q, "x^4", "-4*x^4", "T2c", None),
    (Q, "x^5+x", "x^3", "NoQuadFactor", []),
])
def test_known_classifications(field, f, g, case, tags):
    cert = classify(f, g, field)
    assert cert.case == case
    if tags is not None:
        assert cert.matching_tags == tags
    assert all(ok for _, ok in cert.checks)


def test_t2b_i_contains_linear_split():
    cert = classify("x^3", "x^3", F5)
    assert "x + 4*y" in [str(q) for q in cert.factors]
    assert cert.params["n"] == 3 and cert.params["a"] == 0


def test_t2d_round_trip():
    f, g, facs = construct_case("T2d", {"a": 1, "gamma1": 1, "delta1": 1, "gamma2": 2, "delta2": 0}, F3)
    cert = classify_pair(f, g)
    assert cert.case == "T2d" or "T2d" in cert.matching_tags
    assert verify_certificate(cert, f, g)[0]


def test_reduce_frobenius():
    f, g, steps = reduce_frobenius(P("x^6+x^3", F3), P("x^3", F3))
    assert (f, g) == (P("x^2+x", F3), P("x", F3)) and len(steps) == 1
    t = F4.gen().v
    f0 = P("x^3 + t*x + 1", F4)
    a, b = t, 1
    f = compose(f0, P("x^2", F4))
    g = compose(f0, UniPoly(F4, [b, 0, a]))
    fr, gr, steps = reduce_frobenius(f, g)
    assert steps[0].t3b == (a, b)
    assert str(steps[0].t3b_factor()) == "x^2 + t*y^2 + 1"
    assert divides(steps[0].t3b_factor(), difference_poly(f, g))
    assert undo_frobenius(fr, gr, steps) == (f, g)
    assert reduce_frobenius(P("x^3+x", F3), P("x^3", F3))[2] == []


def test_construct_examples():
    f, g, facs = construct_case("T2b-v", {"a": 1}, F2)
    assert f == g == P("x^4 + x", F2)     # X^4 + (1+a)X^2 + aX with a = 1
    a = F9.gen()
    f, g, facs = construct_case("T2c", {"n": 2, "a": a, "s": 1}, F9)
    assert [str(q) for q in facs] == ["x^2 + y^2 + 2*t"]
    t = F4.gen()
    f, g, facs = construct_case("T3b", {"f0": P("x^2 + x", F4), "a": t, "b": 1}, F4)
    assert "x^2 + t*y^2 + 1" in [str(q) for q in facs]


@pytest.mark.parametrize("tag,params,field,needle", [
    ("T1b", {"n": 6, "a": 1}, F5, "power of 2"),
    ("T2b-v", {"a": 1}, F3, "p = 2"),
    ("T2b-iv", {"a": 0}, F3, "a != 0"),
    ("T2b-i", {"n": 3, "a": 1}, F3, "p does not divide n"),
    ("T2b-i", {"n": 5, "a": 1}, Q, "zeta"),
    ("T3b", {"f0": None, "a": 1}, F2, "f0"),
    ("T3a", {"inner": "T1a"}, Q, "positive characteristic"),
])
def test_constraint_errors(tag, params, field, needle):
    with pytest.raises(ConstraintError) as err:
        construct_case(tag, params, field)
    assert needle in str(err.value)


def test_tampered_certificate_fails():
    f, g = P("x^3", F5), P("x^3", F5)
    cert = classify_pair(f, g)
    q = cert.factors[0]
    bad = list(q.coeffs)
    bad[-1] = F5.add(bad[-1], 1)
    cert.factors[0] = QuadPoly(F5, tuple(bad))
    ok, report = verify_certificate(cert, f, g)
    assert not ok
    failed = [name for name, passed in report if not passed]
    assert failed and failed[0].startswith("divides:")


def test_trace_condition_in_certificate():
    # D_5(X, 1) over F_3: zeta_5 + 1/zeta_5 is not in F_3, so a = 1 is not a T2b-i witness
    f = P("x^5 - 5*x^3 + 5*x", F3)
    cert = classify_pair(f, f)
    forged = dataclasses.replace(cert, case="T2b-i",
                                 params=dict(family="Dickson", n=5, a=1, alpha=1, beta=0, gamma=1, delta=0),
                                 matching_tags=[])
    ok, report = verify_certificate(forged, f, f)
    assert not ok
    assert ("a = 0 or zeta + 1/zeta in K", False) in report


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([F2, F3, F4]), st.data())
def test_certificates_verify_and_agree(K, data):
    f = data.draw(polys(K, 1, 4, monic=True))
    g = data.draw(polys(K, 1, 4))
    cert = classify_pair(f, g)
    assert verify_certificate(cert, f, g)[0]
    found = {q.coeffs for q in quad_factors_exhaustive(difference_poly(f, g.scale(K.inv(f.lc))))}
    if cert.case == "NoQuadFactor":
        assert not found
    for q in cert.factors:
        assert divides(q.to_bipoly(), difference_poly(f, g))


@pytest.mark.parametrize("K", [F3, F5, F9, F4, Q], ids=lambda K: K.spec())
def test_round_trip_sampled(K):
    for tag in CONSTRUCTIBLE:
        if not applicable(tag, K):
            continue
        S = Sampler(K, seed=11)
        for _ in range(5):
            prm, f, g, facs = S.construct(tag)
            cert = classify_pair(f, g)
            assert cert.case == tag or tag in cert.matching_tags, (tag, str(f), str(g))
            assert verify_certificate(cert, f, g)[0]
