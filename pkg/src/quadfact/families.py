"""Recognizing the special polynomial families up to linear equivalence.

A match is a :class:`FamilyTag` witnessing ``f = L(h(gamma X + delta))``
with ``h`` the family representative and ``L`` linear.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field

from .field import FieldCtx, roots_of
from .unipoly import UniPoly, compose, dickson

DICKSON = "Dickson"
ADDITIVE = "AdditiveP"
SQUARED_ADDITIVE = "SquaredAdditive"
HALF_ADDITIVE = "HalfAdditive"
CHAR2_QUARTIC = "Char2Quartic"

FAMILY_ORDER = (DICKSON, ADDITIVE, SQUARED_ADDITIVE, HALF_ADDITIVE, CHAR2_QUARTIC)


@dataclass(frozen=True)
class FamilyTag:
    family: str
    n: int
    params: tuple            # raw values: (a,) or (a, b)
    gamma: object
    delta: object
    outer: UniPoly = field(compare=False)

    @property
    def ctx(self) -> FieldCtx:
        return self.outer.ctx

    @property
    def a(self):
        return self.params[0]

    def h(self) -> UniPoly:
        return family_poly(self.ctx, self.family, self.n, self.params)

    def inner(self) -> UniPoly:
        return UniPoly(self.ctx, [self.delta, self.gamma])

    def rebuild(self) -> UniPoly:
        return compose(self.outer, compose(self.h(), self.inner()))


def family_poly(ctx: FieldCtx, family: str, n: int, params) -> UniPoly:
    p = ctx.p
    one = ctx.one
    if family == DICKSON:
        return dickson(n, params[0], ctx)
    if family == ADDITIVE:
        a, = params
        return UniPoly(ctx, [ctx.zero, ctx.neg(a)] + [ctx.zero] * (p - 2) + [one])
    if family == SQUARED_ADDITIVE:
        a, b = params
        inner = UniPoly(ctx, [b, a] + [ctx.zero] * (p - 2) + [one])
        return inner * inner
    if family == HALF_ADDITIVE:
        a, = params
        e = (p + 1) // 2
        c = [ctx.zero] * (p + 1)
        c[p] = one
        c[e] = ctx.neg(ctx.mul(ctx.from_int(2), a))
        c[1] = ctx.add(c[1], ctx.mul(a, a))
        return UniPoly(ctx, c)
    if family == CHAR2_QUARTIC:
        a, = params
        return UniPoly(ctx, [ctx.zero, a, ctx.add(one, a), ctx.zero, one])
    raise ValueError(f"unknown family {family!r}")


def _fit_outer(f: UniPoly, hin: UniPoly) -> UniPoly | None:
    """Linear L with f = L o hin, or None."""
    ctx = f.ctx
    if hin.degree != f.degree:
        return None
    s = ctx.div(f.lc, hin.lc)
    L = UniPoly(ctx, [ctx.sub(f.coeff(0), ctx.mul(s, hin.coeff(0))), s])
    return L if compose(L, hin) == f else None


def _try(f, family, n, params, gamma, delta) -> FamilyTag | None:
    ctx = f.ctx
    h = family_poly(ctx, family, n, params)
    hin = compose(h, UniPoly(ctx, [delta, gamma]))
    L = _fit_outer(f, hin)
    if L is None:
        return None
    return FamilyTag(family, n, tuple(params), gamma, delta, L)


def _match_dickson(f: UniPoly) -> FamilyTag | None:
    ctx = f.ctx
    n = f.degree
    if ctx.p and n % ctx.p == 0:
        return None
    fm = f.monic()
    inv_n = ctx.inv(ctx.from_int(n))
    eps = ctx.mul(fm.coeff(n - 1), inv_n)
    depressed = compose(fm, UniPoly(ctx, [ctx.neg(eps), ctx.one]))
    a = ctx.neg(ctx.mul(depressed.coeff(n - 2), inv_n))
    return _try(f, DICKSON, n, (a,), ctx.one, eps)


def _match_additive(f: UniPoly) -> FamilyTag | None:
    ctx = f.ctx
    p = ctx.p
    if p < 3 or f.degree != p:
        return None
    fm = f.monic()
    return _try(f, ADDITIVE, p, (ctx.neg(fm.coeff(1)),), ctx.one, ctx.zero)


def _match_squared_additive(f: UniPoly) -> FamilyTag | None:
    ctx = f.ctx
    p = ctx.p
    if p < 3 or f.degree != 2 * p:
        return None
    fm = f.monic()
    half = ctx.inv(ctx.from_int(2))
    a = ctx.mul(fm.coeff(p + 1), half)
    b = ctx.mul(fm.coeff(p), half)
    return _try(f, SQUARED_ADDITIVE, 2 * p, (a, b), ctx.one, ctx.zero)


def _match_half_additive(f: UniPoly) -> FamilyTag | None:
    ctx = f.ctx
    p = ctx.p
    if p < 3 or f.degree != p:
        return None
    fm = f.monic()
    e = (p + 1) // 2
    two = ctx.from_int(2)
    A = ctx.neg(ctx.div(fm.coeff(e), two))
    if A == 0:
        eps = ctx.zero
    elif p == 3:
        # X coefficient is A^2 - 4 A eps
        eps = ctx.div(ctx.sub(ctx.mul(A, A), fm.coeff(1)), ctx.mul(ctx.from_int(4), A))
    else:
        # X^(e-1) coefficient is -2 A e eps
        eps = ctx.div(fm.coeff(e - 1), ctx.neg(ctx.mul(ctx.mul(two, A), ctx.from_int(e))))
    return _try(f, HALF_ADDITIVE, p, (A,), ctx.one, eps)


def _match_char2_quartic(f: UniPoly) -> FamilyTag | None:
    ctx = f.ctx
    if ctx.p != 2 or f.degree != 4:
        return None
    fm = f.monic()
    if fm.coeff(3) != 0:
        return None
    e2, e1 = fm.coeff(2), fm.coeff(1)
    # gamma solves e1 Z^3 + e2 Z^2 + 1 = 0 (characteristic 2)
    cubic = UniPoly(ctx, [ctx.one, ctx.zero, e2, e1])
    if cubic.degree < 1:
        return None
    for g in sorted(set(roots_of(ctx, cubic)), key=ctx.key):
        if g == 0:
            continue
        a = ctx.mul(e1, ctx.pow(g, 3))
        tag = _try(f, CHAR2_QUARTIC, 4, (a,), g, ctx.zero)
        if tag is not None:
            return tag
    return None


_MATCHERS = {
    DICKSON: _match_dickson,
    ADDITIVE: _match_additive,
    SQUARED_ADDITIVE: _match_squared_additive,
    HALF_ADDITIVE: _match_half_additive,
    CHAR2_QUARTIC: _match_char2_quartic,
}


@functools.lru_cache(maxsize=16384)
def match_families(f: UniPoly) -> tuple[FamilyTag, ...]:
    """Every family f belongs to, in the fixed case order."""
    if f.degree < 3:
        return ()
    out = []
    for name in FAMILY_ORDER:
        tag = _MATCHERS[name](f)
        if tag is not None:
            assert tag.rebuild() == f
            out.append(tag)
    return tuple(out)


def match_family(f: UniPoly) -> FamilyTag | None:
    """First family match (Dickson, X^p - aX, (X^p+aX+b)^2, half-additive, char-2 quartic)."""
    found = match_families(f)
    return found[0] if found else None
