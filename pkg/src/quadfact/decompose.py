"""Functional decomposition f = Phi o f1 and linear equivalence f = L o h o R.

Right components are normalized to be monic with zero constant term; the
outer component absorbs all linear slack.
"""

from __future__ import annotations

import functools
import itertools
import math
from typing import NamedTuple

from .config import DEFAULT, BudgetExceeded, Config
from .field import divisors, roots_of
from .unipoly import UniPoly, compose, normalize_right


class WildUndecided(BudgetExceeded):
    """A wild right component search was skipped because it exceeds the budget."""


class Decomposition(NamedTuple):
    phi: UniPoly
    f1: UniPoly
    g1: UniPoly


def base_expansion(f: UniPoly, h: UniPoly) -> list[UniPoly]:
    """Coefficients c_i (deg c_i < deg h) with f = sum c_i h^i."""
    if h.degree < 1:
        raise ValueError("base must be nonconstant")
    out = []
    while not f.is_zero():
        f, r = f.divmod(h)
        out.append(r)
    return out or [UniPoly(h.ctx)]


def left_component(f: UniPoly, f1: UniPoly) -> UniPoly | None:
    """Phi with f = Phi o f1, or None."""
    ctx = f.ctx
    digits = base_expansion(f, f1)
    if any(c.degree > 0 for c in digits):
        return None
    return UniPoly(ctx, [c.coeff(0) for c in digits])


def _approximate_root(f: UniPoly, d: int) -> UniPoly:
    """Monic zero-shifted f1 of degree d matching the top d coefficients of f^(1/r)."""
    ctx = f.ctx
    m = f.degree
    r = m // d
    fm = f.monic()
    inv_r = ctx.inv(ctx.from_int(r))
    s = [ctx.zero] * d + [ctx.one]
    for j in range(1, d):
        cur = UniPoly(ctx, s) ** r
        diff = ctx.sub(fm.coeff(m - j), cur.coeff(m - j))
        s[d - j] = ctx.mul(diff, inv_r)
    return UniPoly(ctx, s)


def _monic_zero_shifted(ctx, d):
    elems = ctx.lex_elements()
    for tail in itertools.product(elems, repeat=d - 1):
        yield UniPoly(ctx, (ctx.zero,) + tail + (ctx.one,))


def right_components(f: UniPoly, d: int, config: Config = DEFAULT) -> list[UniPoly]:
    """All monic zero-shifted f1 of degree d with f = Phi o f1.

    Tame (p does not divide deg f / d): at most one, found by coefficient
    recursion.  Wild: exhaustive over candidates, raising WildUndecided when
    the candidate count exceeds ``config.max_wild_candidates``.
    """
    m = f.degree
    if m < 1 or d < 1 or m % d:
        raise ValueError(f"{d} does not divide deg f = {m}")
    ctx = f.ctx
    if d == m:
        return [normalize_right(f)[1]]
    if d == 1:
        return [UniPoly.x(ctx)]
    r = m // d
    if ctx.p == 0 or r % ctx.p:
        cand = _approximate_root(f, d)
        return [cand] if left_component(f, cand) is not None else []
    if ctx.q ** (d - 1) > config.max_wild_candidates:
        raise WildUndecided(f"wild decomposition search needs {ctx.q ** (d - 1)} candidates")
    return [c for c in _monic_zero_shifted(ctx, d) if left_component(f, c) is not None]


def right_component(f: UniPoly, d: int, config: Config = DEFAULT) -> UniPoly | None:
    found = right_components(f, d, config)
    return found[0] if found else None


@functools.lru_cache(maxsize=8192)
def decompositions(f: UniPoly, config: Config = DEFAULT) -> tuple[tuple[UniPoly, UniPoly], ...]:
    """All (Phi, f1) with f = Phi o f1, f1 normalized; smallest deg f1 first.

    Wild degrees beyond the budget are skipped silently; use
    :func:`right_components` directly to observe that.
    """
    out = []
    for d in divisors(f.degree):
        try:
            comps = right_components(f, d, config)
        except WildUndecided:
            continue
        for f1 in comps:
            phi = left_component(f, f1)
            out.append((phi, f1))
    return tuple(out)


def _binom_mod(n, k, ctx):
    return ctx.from_int(math.comb(n, k))


def right_linear_shift_match(phi_f: UniPoly, phi_g: UniPoly) -> list[tuple]:
    """All raw (u, v) with phi_g = phi_f o (u X + v), sorted by key."""
    ctx = phi_f.ctx
    D = phi_f.degree
    if D != phi_g.degree:
        return []
    if D <= 0:
        return [(ctx.one, ctx.zero)] if phi_f == phi_g else []
    ratio = ctx.div(phi_g.lc, phi_f.lc)
    us = ctx.nth_roots(ratio, D)
    out = []
    c = phi_f.coeffs
    for u in us:
        v_cands = None
        for j in range(D - 1, -1, -1):
            # coefficient of X^j in phi_f(uX + V), as a polynomial in V
            uj = ctx.pow(u, j)
            poly = [ctx.mul(ctx.mul(c[i], _binom_mod(i, j, ctx)), uj) for i in range(j, D + 1)]
            poly[0] = ctx.sub(poly[0], phi_g.coeff(j))
            P = UniPoly(ctx, poly)
            if P.degree >= 1:
                v_cands = sorted(set(roots_of(ctx, P)), key=ctx.key)
                break
            if not P.is_zero():
                v_cands = []
                break
        if v_cands is None:
            v_cands = [ctx.zero]
        for v in v_cands:
            if compose(phi_f, UniPoly(ctx, [v, u])) == phi_g:
                out.append((u, v))
    out.sort(key=lambda uv: (uv[0] != ctx.one, ctx.key(uv[0]), ctx.key(uv[1])))
    return out


@functools.lru_cache(maxsize=65536)
def common_decompositions(f: UniPoly, g: UniPoly, config: Config = DEFAULT) -> tuple[Decomposition, ...]:
    """Every found (Phi, f1, g1) with f = Phi o f1 and g = Phi o g1, largest Phi first.

    f1 is normalized; g1 = u * (normalized right component of g) + v.
    """
    f.ctx.check(g.ctx)
    out = []
    seen = set()
    dg = decompositions(g, config)
    for phi_f, f1 in decompositions(f, config):
        for phi_g, g1n in dg:
            if phi_g.degree != phi_f.degree:
                continue
            for u, v in right_linear_shift_match(phi_f, phi_g):
                g1 = g1n.scale(u) + UniPoly(f.ctx, [v])
                key = (phi_f, f1, g1)
                if key not in seen:
                    seen.add(key)
                    out.append(Decomposition(phi_f, f1, g1))
    out.sort(key=lambda dec: -dec.phi.degree)
    return tuple(out)


def common_left_component(f: UniPoly, g: UniPoly, config: Config = DEFAULT) -> Decomposition:
    """The found common decomposition with Phi of maximal degree."""
    if f.degree < 1 or g.degree < 1:
        raise ValueError("f and g must be nonconstant")
    decs = common_decompositions(f, g, config)
    if decs:
        return decs[0]
    # Unreachable when the trivial degree-1 outer component exists; kept as a guard.
    return Decomposition(UniPoly.x(f.ctx), f, g)


def linear_equivalent(f: UniPoly, h: UniPoly) -> tuple[UniPoly, UniPoly] | None:
    """Linear L, R with f = L o h o R, or None."""
    ctx = f.ctx
    ctx.check(h.ctx)
    n = f.degree
    if n != h.degree or n < 1:
        raise ValueError("f and h must have the same positive degree")
    _, fn = normalize_right(f)
    _, hn = normalize_right(h)
    if ctx.p == 0 or n % ctx.p:
        inv_n = ctx.inv(ctx.from_int(n))
        a = ctx.mul(fn.coeff(n - 1), inv_n)
        b = ctx.mul(hn.coeff(n - 1), inv_n)
        shifts = [(a, b)]
    else:
        shifts = [(ctx.zero, s) for s in ctx.lex_elements()]
    for a, b in shifts:
        # F(Z) = fn(Z - a), H(Y) = hn(Y - b); look for F(Z) = H(rZ)/r^n + c
        F = compose(fn, UniPoly(ctx, [ctx.neg(a), ctx.one]))
        H = compose(hn, UniPoly(ctx, [ctx.neg(b), ctx.one]))
        r_cands = _scaling_candidates(F, H)
        for r in r_cands:
            R = UniPoly(ctx, [ctx.sub(ctx.mul(r, a), b), r])
            hR = compose(h, R)
            scale = ctx.div(f.lc, hR.lc)
            L = UniPoly(ctx, [ctx.sub(f.coeff(0), ctx.mul(scale, hR.coeff(0))), scale])
            if compose(L, hR) == f:
                return L, R
    return None


def _scaling_candidates(F: UniPoly, H: UniPoly) -> list:
    ctx = F.ctx
    n = F.degree
    best = None
    for j in range(n - 1, 0, -1):
        hj, fj = H.coeff(j), F.coeff(j)
        if (hj == 0) != (fj == 0):
            return []
        if hj != 0:
            best = j
            break
    if best is None:
        return [ctx.one]
    ratio = ctx.div(H.coeff(best), F.coeff(best))
    cands = ctx.nth_roots(ratio, n - best)
    return sorted(cands, key=lambda r: (r != ctx.one, ctx.key(r)))
