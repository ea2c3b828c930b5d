import hypothesis.strategies as st
import pytest
from hypothesis import settings

from quadfact.field import GF, rationals
from quadfact.unipoly import UniPoly

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

SMALL_FIELDS = [GF(2), GF(3), GF(5), GF(7), GF(2, 2), GF(3, 2), GF(2, 3)]


@pytest.fixture
def Q():
    return rationals()


def elements(ctx):
    if ctx.p == 0:
        return st.fractions(min_value=-20, max_value=20, max_denominator=7)
    return st.sampled_from(ctx.lex_elements())


def nonzero(ctx):
    return elements(ctx).filter(lambda v: v != 0)


@st.composite
def polys(draw, ctx, min_deg=0, max_deg=5, monic=False):
    d = draw(st.integers(min_deg, max_deg))
    coeffs = [draw(elements(ctx)) for _ in range(d)]
    lead = ctx.one if monic else draw(nonzero(ctx))
    return UniPoly(ctx, coeffs + [lead])


fields = st.sampled_from(SMALL_FIELDS)
fields_with_q = st.sampled_from(SMALL_FIELDS + [rationals()])
