"""Univariate factorization helpers.

Finite fields: exhaustive trial division by monic polynomials of increasing
degree (desk-scale only).  Q: delegated to sympy.
"""

from __future__ import annotations

import functools
import itertools
from fractions import Fraction

from .field import FieldCtx, roots_of
from .unipoly import UniPoly


def _monic_of_degree(ctx: FieldCtx, d: int):
    elems = ctx.lex_elements()
    for tail in itertools.product(elems, repeat=d):
        yield UniPoly(ctx, tail + (ctx.one,))


@functools.lru_cache(maxsize=4096)
def factor(P: UniPoly) -> tuple[tuple[UniPoly, int], ...]:
    """Monic irreducible factors with multiplicities (leading coefficient dropped)."""
    if P.degree < 1:
        return ()
    if P.ctx.p == 0:
        return _factor_rational(P)
    ctx = P.ctx
    rem = P.monic()
    out = []
    for r in sorted(set(roots_of(ctx, rem)), key=ctx.key):
        lin = UniPoly(ctx, [ctx.neg(r), ctx.one])
        m = 0
        while True:
            q, s = rem.divmod(lin)
            if not s.is_zero():
                break
            rem, m = q, m + 1
        out.append((lin, m))
    d = 2
    while 2 * d <= rem.degree:
        for cand in _monic_of_degree(ctx, d):
            m = 0
            while rem.degree >= d:
                q, s = rem.divmod(cand)
                if not s.is_zero():
                    break
                rem, m = q, m + 1
            if m:
                out.append((cand, m))
            if 2 * d > rem.degree:
                break
        d += 1
    if rem.degree >= 1:
        out.append((rem, 1))
    return tuple(out)


def _factor_rational(P: UniPoly):
    import sympy

    z = sympy.Symbol("z")
    expr = sum(sympy.Rational(c.numerator, c.denominator) * z**i for i, c in enumerate(P.coeffs))
    _, facs = sympy.factor_list(expr, z)
    out = []
    for fac, m in facs:
        coeffs = sympy.Poly(fac, z).all_coeffs()[::-1]
        U = UniPoly(P.ctx, [Fraction(int(sympy.fraction(c)[0]), int(sympy.fraction(c)[1])) for c in coeffs])
        out.append((U.monic(), m))
    out.sort(key=lambda fm: fm[0].key())
    return tuple(out)


def small_factors(P: UniPoly, max_degree: int = 2) -> list[UniPoly]:
    """Distinct monic irreducible factors of degree <= max_degree."""
    return [f for f, _ in factor(P) if f.degree <= max_degree]
