"""Bivariate polynomials, exact division by factors monic in X, the
degree-<=2 factor oracle, and the explicit factorization formulas.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .config import DEFAULT, BudgetExceeded, Config
from .field import (FieldCtx, FieldError, embed, extension_of, find_root_of_unity,
                    preimage_table, roots_of)
from .unipoly import UniPoly, compose, dickson
from . import ufactor

# --- raw Y-polynomial helpers (tuples of raw values, constant first) ---------


def _trim(c: list) -> tuple:
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def _padd(ctx, a, b):
    if len(a) < len(b):
        a, b = b, a
    add = ctx.add
    return _trim([add(x, b[i]) if i < len(b) else x for i, x in enumerate(a)])


def _pneg(ctx, a):
    return tuple(ctx.neg(x) for x in a)


def _psub(ctx, a, b):
    return _padd(ctx, a, _pneg(ctx, b))


def _pmul(ctx, a, b):
    if not a or not b:
        return ()
    add, mul = ctx.add, ctx.mul
    out = [ctx.zero] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            if y != 0:
                out[i + j] = add(out[i + j], mul(x, y))
    return _trim(out)


def _pscale(ctx, a, c):
    if c == 0:
        return ()
    return _trim([ctx.mul(c, x) for x in a])


def _peval(ctx, a, y):
    acc = ctx.zero
    for c in reversed(a):
        acc = ctx.add(ctx.mul(acc, y), c)
    return acc


class BiPoly:
    """Element of K[Y][X]: ``rows[i]`` is the Y-coefficient tuple of X^i."""

    __slots__ = ("ctx", "rows", "_hash")

    def __init__(self, ctx: FieldCtx, rows: Iterable[Sequence] = ()):
        rs = [_trim(list(r)) for r in rows]
        while rs and not rs[-1]:
            rs.pop()
        self.ctx = ctx
        self.rows = tuple(rs)
        self._hash = None

    # construction ----------------------------------------------------------
    @classmethod
    def from_terms(cls, ctx: FieldCtx, terms: dict) -> "BiPoly":
        """``terms`` maps (i, j) -> raw coefficient of X^i Y^j."""
        if not terms:
            return cls(ctx)
        dx = max(i for i, _ in terms)
        dy = max(j for _, j in terms)
        rows = [[ctx.zero] * (dy + 1) for _ in range(dx + 1)]
        for (i, j), c in terms.items():
            rows[i][j] = ctx.add(rows[i][j], c)
        return cls(ctx, rows)

    @classmethod
    def from_x(cls, f: UniPoly) -> "BiPoly":
        return cls(f.ctx, [(c,) for c in f.coeffs])

    @classmethod
    def from_y(cls, f: UniPoly) -> "BiPoly":
        return cls(f.ctx, [f.coeffs])

    @classmethod
    def const(cls, ctx: FieldCtx, c) -> "BiPoly":
        return cls(ctx, [(c,)])

    @classmethod
    def X(cls, ctx):
        return cls(ctx, [(), (ctx.one,)])

    @classmethod
    def Y(cls, ctx):
        return cls(ctx, [(ctx.zero, ctx.one)])

    # properties ------------------------------------------------------------
    def terms(self):
        for i, row in enumerate(self.rows):
            for j, c in enumerate(row):
                if c != 0:
                    yield i, j, c

    def coeff(self, i: int, j: int):
        if i < len(self.rows) and j < len(self.rows[i]):
            return self.rows[i][j]
        return self.ctx.zero

    def is_zero(self) -> bool:
        return not self.rows

    @property
    def deg_x(self) -> int:
        return len(self.rows) - 1

    @property
    def deg_y(self) -> int:
        return max((len(r) - 1 for r in self.rows), default=-1)

    @property
    def total_degree(self) -> int:
        return max((i + j for i, j, _ in self.terms()), default=-1)

    def lc_x(self) -> tuple:
        return self.rows[-1]

    def __eq__(self, other):
        if not isinstance(other, BiPoly):
            return NotImplemented
        return self.ctx == other.ctx and self.rows == other.rows

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ctx, self.rows))
        return self._hash

    def __repr__(self):
        return f"BiPoly({self.ctx.spec()}, {self})"

    def __str__(self):
        from .parsing import format_bipoly
        return format_bipoly(self)

    # arithmetic ------------------------------------------------------------
    def _coerce(self, other) -> "BiPoly":
        if isinstance(other, BiPoly):
            self.ctx.check(other.ctx)
            return other
        if isinstance(other, UniPoly):
            raise TypeError("lift UniPoly with BiPoly.from_x / from_y first")
        return BiPoly.const(self.ctx, self.ctx.coerce(other))

    def __add__(self, other):
        other = self._coerce(other)
        ctx = self.ctx
        a, b = self.rows, other.rows
        if len(a) < len(b):
            a, b = b, a
        return BiPoly(ctx, [_padd(ctx, r, b[i]) if i < len(b) else r for i, r in enumerate(a)])

    __radd__ = __add__

    def __neg__(self):
        return BiPoly(self.ctx, [_pneg(self.ctx, r) for r in self.rows])

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        ctx = self.ctx
        a, b = self.rows, other.rows
        if not a or not b:
            return BiPoly(ctx)
        out = [()] * (len(a) + len(b) - 1)
        for i, r in enumerate(a):
            if not r:
                continue
            for j, s in enumerate(b):
                if s:
                    out[i + j] = _padd(ctx, out[i + j], _pmul(ctx, r, s))
        return BiPoly(ctx, out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        out = BiPoly.const(self.ctx, self.ctx.one)
        for _ in range(e):
            out = out * self
        return out

    def scale(self, c) -> "BiPoly":
        return BiPoly(self.ctx, [_pscale(self.ctx, r, c) for r in self.rows])

    def map_coeffs(self, fn, ctx: FieldCtx | None = None) -> "BiPoly":
        ctx = ctx or self.ctx
        return BiPoly(ctx, [[fn(c) for c in r] for r in self.rows])

    # evaluation & substitution ----------------------------------------------
    def eval_y(self, y) -> UniPoly:
        """F(X, y) as a polynomial in X."""
        ctx = self.ctx
        return UniPoly(ctx, [_peval(ctx, r, y) for r in self.rows])

    def eval_x(self, x) -> UniPoly:
        ctx = self.ctx
        acc = ()
        for r in reversed(self.rows):
            acc = _padd(ctx, _pscale(ctx, acc, x), r)
        return UniPoly(ctx, acc)

    def __call__(self, x, y):
        return self.ctx.elem(_peval(self.ctx, self.eval_y(self.ctx.coerce(y)).coeffs,
                                    self.ctx.coerce(x)))

    def substitute(self, xsub: UniPoly, ysub: UniPoly) -> "BiPoly":
        """F(xsub(X), ysub(Y))."""
        ctx = self.ctx
        X = BiPoly.from_x(xsub)
        acc = BiPoly(ctx)
        for r in reversed(self.rows):
            acc = acc * X + BiPoly.from_y(compose(UniPoly(ctx, r), ysub))
        return acc

    def swap(self) -> "BiPoly":
        return BiPoly.from_terms(self.ctx, {(j, i): c for i, j, c in self.terms()})


def product(polys: Iterable[BiPoly], ctx: FieldCtx) -> BiPoly:
    out = BiPoly.const(ctx, ctx.one)
    for q in polys:
        out = out * q
    return out


# --- quadratic factors ---------------------------------------------------------

QUAD_MONOMIALS = ((2, 0), (1, 1), (0, 2), (1, 0), (0, 1), (0, 0))


@dataclass(frozen=True)
class QuadPoly:
    """q20 X^2 + q11 XY + q02 Y^2 + q10 X + q01 Y + q00, canonically scaled."""

    ctx: FieldCtx = field(compare=True)
    coeffs: tuple = ()

    @classmethod
    def from_coeffs(cls, ctx: FieldCtx, coeffs: Sequence) -> "QuadPoly":
        coeffs = tuple(coeffs)
        if len(coeffs) != 6:
            raise ValueError("a QuadPoly has six coefficients")
        lead = next((c for c in coeffs if c != 0), None)
        if lead is None:
            raise ValueError("the zero polynomial is not a QuadPoly")
        inv = ctx.inv(lead)
        return cls(ctx, tuple(ctx.mul(inv, c) for c in coeffs))

    @classmethod
    def from_bipoly(cls, F: BiPoly) -> "QuadPoly":
        if F.total_degree > 2:
            raise ValueError(f"total degree {F.total_degree} exceeds 2")
        return cls.from_coeffs(F.ctx, [F.coeff(i, j) for i, j in QUAD_MONOMIALS])

    def to_bipoly(self) -> BiPoly:
        return BiPoly.from_terms(self.ctx, {m: c for m, c in zip(QUAD_MONOMIALS, self.coeffs) if c != 0})

    @property
    def total_degree(self) -> int:
        return self.to_bipoly().total_degree

    def key(self):
        return tuple(self.ctx.key(c) for c in self.coeffs)

    def __str__(self):
        return str(self.to_bipoly())

    def __repr__(self):
        return f"QuadPoly({self.ctx.spec()}, {self})"


def canonical_quads(polys: Iterable[BiPoly]) -> list[QuadPoly]:
    """Canonical, deduplicated, sorted QuadPolys (skipping constants)."""
    out = {}
    for F in polys:
        if F.total_degree < 1:
            continue
        q = QuadPoly.from_bipoly(F)
        out[q.coeffs] = q
    return sorted(out.values(), key=QuadPoly.key)


# --- core operations -------------------------------------------------------------

def difference_poly(f: UniPoly, g: UniPoly) -> BiPoly:
    """f(X) - g(Y)."""
    f.ctx.check(g.ctx)
    return BiPoly.from_x(f) - BiPoly.from_y(g)


def divide_monic_in_x(F: BiPoly, q: BiPoly) -> BiPoly | None:
    """Exact quotient F / q in K[Y][X], or None when q does not divide F.

    ``q`` must have degree >= 1 in X and a nonzero constant X-leading coefficient.
    """
    ctx = F.ctx
    ctx.check(q.ctx)
    if q.deg_x < 1 or len(q.lc_x()) != 1:
        raise ValueError("divisor must have a constant nonzero leading coefficient in X")
    inv = ctx.inv(q.lc_x()[0])
    dq = q.deg_x
    qrows = q.rows
    rem = list(F.rows)
    if len(rem) - 1 < dq:
        return None if rem else BiPoly(ctx)
    quo = [()] * (len(rem) - dq)
    for d in range(len(rem) - 1, dq - 1, -1):
        c = rem[d]
        if not c:
            continue
        c = _pscale(ctx, c, inv)
        quo[d - dq] = c
        for i in range(dq + 1):
            if qrows[i]:
                rem[d - dq + i] = _psub(ctx, rem[d - dq + i], _pmul(ctx, c, qrows[i]))
    if any(rem[:dq]):
        return None
    return BiPoly(ctx, quo)


def divides(q: BiPoly, F: BiPoly) -> bool:
    """q | F for q with constant X-leading coefficient, or q of X-degree 0."""
    if q.deg_x >= 1:
        return divide_monic_in_x(F, q) is not None
    return divide_monic_in_x(F.swap(), q.swap()) is not None if q.deg_y >= 1 else not q.is_zero()


# --- the oracle -------------------------------------------------------------------

def _check_enum(ctx: FieldCtx, config: Config):
    if ctx.p == 0:
        raise BudgetExceeded("exhaustive search needs a finite field")
    if ctx.q > config.max_enum_field:
        raise BudgetExceeded(f"field size {ctx.q} exceeds max_enum_field={config.max_enum_field}")


def _shape_a(ctx, c2, c1, c0) -> BiPoly:
    return BiPoly(ctx, [(c0, c1, c2), (ctx.one,)])


def _shape_b(ctx, b1, b0, c2, c1, c0) -> BiPoly:
    return BiPoly(ctx, [(c0, c1, c2), (b0, b1), (ctx.one,)])


def _brute(F: BiPoly) -> list[BiPoly]:
    ctx = F.ctx
    elems = ctx.lex_elements()
    found = []
    for c2, c1, c0 in itertools.product(elems, repeat=3):
        q = _shape_a(ctx, c2, c1, c0)
        if divide_monic_in_x(F, q) is not None:
            found.append(q)
    for b1, b0, c2, c1, c0 in itertools.product(elems, repeat=5):
        q = _shape_b(ctx, b1, b0, c2, c1, c0)
        if divide_monic_in_x(F, q) is not None:
            found.append(q)
    return found


@functools.lru_cache(maxsize=65536)
def _monic_divisors(P: UniPoly) -> tuple[tuple[tuple, ...], tuple[tuple, ...]]:
    """(roots, monic quadratic divisors (B, C)) of a univariate P; all if P == 0."""
    ctx = P.ctx
    elems = ctx.lex_elements()
    if P.is_zero():
        return tuple((r,) for r in elems), tuple(itertools.product(elems, repeat=2))
    roots = tuple((r,) for r in sorted(set(roots_of(ctx, P)), key=ctx.key))
    quads = []
    if P.degree >= 2:
        for B, C in itertools.product(elems, repeat=2):
            if P.divmod(UniPoly(ctx, [C, B, ctx.one]))[1].is_zero():
                quads.append((B, C))
    return roots, tuple(quads)


def _interpolate(ctx, ys, vals):
    """Coefficients (constant first) of the unique polynomial of degree < len(ys)."""
    n = len(ys)
    out = [ctx.zero] * n
    for i in range(n):
        basis = (ctx.one,)
        denom = ctx.one
        for j in range(n):
            if j != i:
                basis = _pmul(ctx, basis, (ctx.neg(ys[j]), ctx.one))
                denom = ctx.mul(denom, ctx.sub(ys[i], ys[j]))
        w = ctx.div(vals[i], denom)
        for k, c in enumerate(basis):
            out[k] = ctx.add(out[k], ctx.mul(w, c))
    return out


def _fit_quadratic(ctx, ys, vals, elems):
    """All (c2, c1, c0) with c(y_i) = vals[i]; extra top coefficients enumerated."""
    m = len(ys)
    free = 3 - m
    out = []
    for top in itertools.product(elems, repeat=free):
        # top holds the coefficients of Y^m .. Y^2
        resid = []
        for y, v in zip(ys, vals):
            acc = v
            for k, c in enumerate(top):
                acc = ctx.sub(acc, ctx.mul(c, ctx.pow(y, m + k)))
            resid.append(acc)
        low = _interpolate(ctx, ys, resid)
        coeffs = list(low) + list(top)
        out.append((coeffs[2], coeffs[1], coeffs[0]))
    return out


def _specialize(F: BiPoly) -> list[BiPoly]:
    ctx = F.ctx
    elems = ctx.lex_elements()
    ys = elems[:3]
    data = [_monic_divisors(F.eval_y(y)) for y in ys]
    found = []
    # shape A: X + c(Y); -c(y) is a root of F(X, y)
    for choice in itertools.product(*(d[0] for d in data)):
        vals = [ctx.neg(r[0]) for r in choice]
        for c2, c1, c0 in _fit_quadratic(ctx, ys, vals, elems):
            q = _shape_a(ctx, c2, c1, c0)
            if divide_monic_in_x(F, q) is not None:
                found.append(q)
    # shape B: X^2 + b(Y) X + c(Y); (b(y), c(y)) is a monic quadratic divisor of F(X, y)
    for choice in itertools.product(*(d[1] for d in data)):
        bvals = [bc[0] for bc in choice]
        cvals = [bc[1] for bc in choice]
        b0, b1 = _interpolate(ctx, ys[:2], bvals[:2])
        if len(ys) == 3 and ctx.add(b0, ctx.mul(b1, ys[2])) != bvals[2]:
            continue
        for c2, c1, c0 in _fit_quadratic(ctx, ys, cvals, elems):
            q = _shape_b(ctx, b1, b0, c2, c1, c0)
            if divide_monic_in_x(F, q) is not None:
                found.append(q)
    return found


@functools.lru_cache(maxsize=65536)
def _quad_factors_cached(F: BiPoly, method: str) -> tuple[QuadPoly, ...]:
    found = _brute(F) if method == "brute" else _specialize(F)
    return tuple(canonical_quads(found))


def quad_factors_exhaustive(F: BiPoly, config: Config = DEFAULT, method: str = "specialize") -> list[QuadPoly]:
    """Every factor of F of the shapes X + c(Y) and X^2 + (b1 Y + b0) X + c(Y).

    ``method="brute"`` enumerates all q^3 + q^5 coefficient tuples.  The
    default prunes the same enumeration: a factor specializes at Y = y to a
    monic divisor of F(X, y), so only tuples whose values at the first three
    field elements are such divisors are tested.  Both test every candidate
    with :func:`divide_monic_in_x`.
    """
    ctx = F.ctx
    _check_enum(ctx, config)
    if F.deg_x < 1 or len(F.lc_x()) != 1:
        raise ValueError("F must have a constant nonzero leading coefficient in X")
    if method not in ("specialize", "brute"):
        raise ValueError(f"unknown method {method!r}")
    return list(_quad_factors_cached(F, method))


# --- explicit factorization formulas ------------------------------------------


@dataclass
class FactorSet:
    """Factors over ``ctx`` (possibly an extension of ``base``)."""

    base: FieldCtx
    ctx: FieldCtx
    factors: list
    in_base: list
    target: BiPoly

    def base_factors(self) -> list[BiPoly]:
        """Factors whose coefficients lie in the base field, rewritten over it."""
        if self.ctx == self.base:
            return [f for f, ok in zip(self.factors, self.in_base) if ok]
        back = preimage_table(self.base, self.ctx)
        return [f.map_coeffs(back.__getitem__, self.base)
                for f, ok in zip(self.factors, self.in_base) if ok]


def _in_base(F: BiPoly, base: FieldCtx, E: FieldCtx) -> bool:
    if base == E:
        return True
    image = set(preimage_table(base, E))
    return all(c in image for _, _, c in F.terms())


def _quadratic_xy(ctx, c, const) -> BiPoly:
    """X^2 - c XY + Y^2 + const."""
    one = ctx.one
    return BiPoly.from_terms(ctx, {(2, 0): one, (1, 1): ctx.neg(c), (0, 2): one, (0, 0): const})


def _verify_product(factors, target, what):
    ctx = target.ctx
    if product(factors, ctx) != target:
        raise AssertionError(f"{what}: product of factors differs from the target")


def _unity_traces(ctx: FieldCtx, m: int, sign, ks) -> list:
    """z^k + z^-k for k in ks, z a primitive m-th root of unity.

    Uses z when the field has it; otherwise the traces are read off as roots
    of D_(m/e)(W, 1) - 2 sign (e = 1 for sign 1, e = 2 for sign -1), which
    only needs the traces themselves to lie in the field.
    """
    ks = list(ks)
    try:
        z = find_root_of_unity(ctx, m).v
    except FieldError:
        z = None
    if z is not None:
        out = []
        for k in ks:
            zk = ctx.pow(z, k)
            out.append(ctx.add(zk, ctx.inv(zk)))
        return out
    n = m if sign == ctx.one else m // 2
    P = dickson(n, ctx.one, ctx) - UniPoly(ctx, [ctx.mul(ctx.from_int(2), sign)])
    roots = sorted(set(roots_of(ctx, P)), key=ctx.key)
    two = ctx.from_int(2)
    roots = [w for w in roots if w not in (two, ctx.neg(two))]
    if len(roots) != len(ks):
        raise FieldError(f"z + 1/z is not in {ctx.spec()} for a primitive {m}-th root of unity z")
    return roots


def dickson_diff_factors(n: int, a, ctx: FieldCtx) -> list[BiPoly]:
    """Factors of D_n(X,a) - D_n(Y,a) when z + 1/z lies in the field for z a
    primitive n-th root of unity (z itself may lie outside).

    X - Y, X + Y for even n, and X^2 - (z^k + z^-k) XY + Y^2 + (z^k - z^-k)^2 a
    for 1 <= k <= ceil(n/2) - 1.
    """
    if ctx.p and n % ctx.p == 0:
        raise FieldError(f"p = {ctx.p} divides n = {n}")
    if n < 1:
        raise ValueError("n must be positive")
    X, Y = BiPoly.X(ctx), BiPoly.Y(ctx)
    out = [X - Y]
    if n % 2 == 0:
        out.append(X + Y)
    for c in _unity_traces(ctx, n, ctx.one, range(1, (n + 1) // 2)):
        # (z^k - z^-k)^2 = c^2 - 4
        d2 = ctx.sub(ctx.mul(c, c), ctx.from_int(4))
        out.append(_quadratic_xy(ctx, c, ctx.mul(d2, a)))
    target = difference_poly(dickson(n, a, ctx), dickson(n, a, ctx))
    _verify_product(out, target, "dickson_diff_factors")
    return out


def dickson_sum_factors(n: int, a, ctx: FieldCtx) -> list[QuadPoly]:
    """The n/2 quadratic factors of D_n(X,a) + D_n(Y,a) for even n, p not dividing 2n.

    X^2 - (x^k + x^-k) XY + Y^2 + (x^k - x^-k)^2 a over odd k < n, x a primitive
    2n-th root of unity.
    """
    if n % 2:
        raise ValueError("n must be even")
    if ctx.p and (2 * n) % ctx.p == 0:
        raise FieldError(f"p = {ctx.p} divides 2n = {2 * n}")
    out = []
    for c in _unity_traces(ctx, 2 * n, ctx.neg(ctx.one), range(1, n, 2)):
        d2 = ctx.sub(ctx.mul(c, c), ctx.from_int(4))
        out.append(_quadratic_xy(ctx, c, ctx.mul(d2, a)))
    target = BiPoly.from_x(dickson(n, a, ctx)) + BiPoly.from_y(dickson(n, a, ctx))
    _verify_product(out, target, "dickson_sum_factors")
    return [QuadPoly.from_bipoly(q) for q in out]


def _linear_in(ctx, W: BiPoly, P: UniPoly) -> BiPoly:
    """P(W) for a bivariate W."""
    acc = BiPoly(ctx)
    for c in reversed(P.coeffs):
        acc = acc * W + BiPoly.const(ctx, c)
    return acc


def _factor_in_w(P: UniPoly, W: BiPoly) -> list[BiPoly]:
    ctx = P.ctx
    out = []
    for fac, m in ufactor.factor(P):
        out.extend([_linear_in(ctx, W, fac)] * m)
    lead = P.lc
    if lead != ctx.one and out:
        out[0] = out[0].scale(lead)
    return out


def additive_diff_factors(tag, ctx: FieldCtx | None = None) -> list[BiPoly]:
    """Factors of h(X) - h(Y) for h = X^p - aX or (X^p + aX + b)^2.

    h(U) - h(V) = P(U - V), resp. P(U - V) (P(U + V) + 2b), with P additive.
    """
    from .families import ADDITIVE, SQUARED_ADDITIVE, family_poly

    ctx = ctx or tag.ctx
    p = ctx.p
    if ctx.p == 0:
        raise FieldError("additive families need positive characteristic")
    X, Y = BiPoly.X(ctx), BiPoly.Y(ctx)
    if tag.family == ADDITIVE:
        a, = tag.params
        P = UniPoly(ctx, [ctx.zero, ctx.neg(a)] + [ctx.zero] * (p - 2) + [ctx.one])
        out = _factor_in_w(P, X - Y)
    elif tag.family == SQUARED_ADDITIVE:
        a, b = tag.params
        P = UniPoly(ctx, [ctx.zero, a] + [ctx.zero] * (p - 2) + [ctx.one])
        P2 = P + UniPoly(ctx, [ctx.mul(ctx.from_int(2), b)])
        out = _factor_in_w(P, X - Y) + _factor_in_w(P2, X + Y)
    else:
        raise ValueError(f"{tag.family} is not an additive family")
    h = family_poly(ctx, tag.family, tag.n, tag.params)
    _verify_product(out, difference_poly(h, h), "additive_diff_factors")
    return out


def _splitting_extension(ctx: FieldCtx, a, n: int, config: Config = DEFAULT):
    """Least extension E of ctx where Z^n = a (a mapped into E) is solvable."""
    j = 1
    while True:
        E = ctx if j == 1 else extension_of(ctx, j)
        if E.q > config.max_field_size:
            raise BudgetExceeded(f"splitting Z^{n} - a needs a field larger than {config.max_field_size}")
        aE = embed(ctx, E)(a)
        if E.nth_roots(aE, n):
            return E, aE
        j += 1


def remark_b4_factors(p: int, a, ctx: FieldCtx, config: Config = DEFAULT) -> FactorSet:
    """h(X) - h(Y) = (X - Y) prod_u ((X - Y)^2 - 2u (X + Y) + u^2),
    h = X^p - 2a X^((p+1)/2) + a^2 X, u over the roots of U^((p-1)/2) = a.

    Each u is t^2 for a pair {t, -t} of roots of Z^(p-1) = a, so only the
    field generated by the u is needed.
    """
    if ctx.p != p or p < 3:
        raise FieldError("needs characteristic p >= 3")
    if a == 0:
        raise ValueError("a must be nonzero")
    from .families import HALF_ADDITIVE, family_poly

    E, aE = _splitting_extension(ctx, a, (p - 1) // 2, config)
    U = sorted(E.nth_roots(aE, (p - 1) // 2), key=E.key)
    X, Y = BiPoly.X(E), BiPoly.Y(E)
    out = [X - Y]
    for u in U:
        D = X - Y
        out.append(D * D - (X + Y).scale(E.mul(E.from_int(2), u)) + BiPoly.const(E, E.mul(u, u)))
    h = family_poly(E, HALF_ADDITIVE, p, (aE,))
    target = difference_poly(h, h)
    _verify_product(out, target, "remark_b4_factors")
    return FactorSet(ctx, E, out, [_in_base(F, ctx, E) for F in out], target)


def remark_b5_factors(a, ctx: FieldCtx) -> tuple[list[BiPoly], bool]:
    """(X+Y)(X+Y+1)(X^2+X+Y^2+Y+a) for h = X^4 + (1+a) X^2 + a X in characteristic 2.

    The flag is True when Z^2 + Z = a has no solution in the field, i.e. the
    quadratic factor is irreducible.
    """
    if ctx.p != 2:
        raise FieldError("remark (b)(v) factorization needs characteristic 2")
    from .families import CHAR2_QUARTIC, family_poly

    X, Y = BiPoly.X(ctx), BiPoly.Y(ctx)
    one = BiPoly.const(ctx, ctx.one)
    out = [X + Y, X + Y + one, X * X + X + Y * Y + Y + BiPoly.const(ctx, a)]
    h = family_poly(ctx, CHAR2_QUARTIC, 4, (a,))
    _verify_product(out, difference_poly(h, h), "remark_b5_factors")
    irreducible = not roots_of(ctx, [ctx.neg(a), ctx.one, ctx.one])
    return out, irreducible


def discriminant_x(q: BiPoly) -> UniPoly:
    """b^2 - 4ac of q = a X^2 + b X + c, as a polynomial in Y."""
    if q.deg_x != 2:
        raise ValueError("needs X-degree 2")
    ctx = q.ctx
    c, b, a = (q.rows + ((),) * 3)[:3]
    four = ctx.from_int(4)
    return UniPoly(ctx, _psub(ctx, _pmul(ctx, b, b), _pscale(ctx, _pmul(ctx, a, c), four)))


def _poly_sqrt(ctx, P: tuple):
    """Square root of a raw Y-polynomial, or None."""
    if not P:
        return ()
    if (len(P) - 1) % 2:
        return None
    m = (len(P) - 1) // 2
    lead = ctx.sqrt(P[-1])
    if lead is None:
        return None
    if ctx.p == 2:
        # Frobenius is additive: sqrt of sum c_i Y^i needs only even i
        if any(P[i] != 0 for i in range(1, len(P), 2)):
            return None
        return _trim([ctx.frob_inv(P[2 * i]) for i in range(m + 1)])
    s = [ctx.zero] * m + [lead]
    inv2l = ctx.inv(ctx.mul(ctx.from_int(2), lead))
    for j in range(1, m + 1):
        cur = _pmul(ctx, tuple(s), tuple(s))
        idx = 2 * m - j
        have = cur[idx] if idx < len(cur) else ctx.zero
        s[m - j] = ctx.mul(ctx.sub(P[idx], have), inv2l)
    s = _trim(s)
    return s if _pmul(ctx, s, s) == _trim(list(P)) else None


def _pdiv_exact(ctx, a: tuple, b: tuple):
    if not b:
        return None
    q, r = UniPoly(ctx, a).divmod(UniPoly(ctx, b))
    return q.coeffs if r.is_zero() else None


def quartic_split(Q4: BiPoly) -> tuple[QuadPoly, QuadPoly] | None:
    """Two monic-in-X quadratics (total degree <= 2) with product Q4, or None.

    Writes Q4 = (X^2 + B1 X + C1)(X^2 + B2 X + C2).  Over a finite field B1 is
    enumerated; then B2 = Q3 - B1 and C1, C2 follow from a linear solve, or
    from a square root of S^2 - 4 Q0 when B1 = B2.  Over Q, sympy is used.
    """
    ctx = Q4.ctx
    if Q4.deg_x != 4 or Q4.lc_x() != (ctx.one,) or Q4.total_degree > 4:
        raise ValueError("Q4 must be monic in X of X-degree 4 and total degree <= 4")
    if ctx.p == 0:
        return _quartic_split_rational(Q4)
    Q0, Q1, Q2, Q3 = (Q4.rows[i] for i in range(4))
    for b1, b0 in itertools.product(ctx.lex_elements(), repeat=2):
        B1 = _trim([b0, b1])
        B2 = _psub(ctx, Q3, B1)
        if len(B2) > 2:
            return None
        S = _psub(ctx, Q2, _pmul(ctx, B1, B2))
        diff = _psub(ctx, B2, B1)
        pairs = []
        if diff:
            num = _psub(ctx, Q1, _pmul(ctx, B1, S))
            C1 = _pdiv_exact(ctx, num, diff)
            if C1 is None:
                continue
            pairs.append((C1, _psub(ctx, S, C1)))
        else:
            if _psub(ctx, Q1, _pmul(ctx, B1, S)):
                continue
            if ctx.p == 2:
                continue
            disc = _psub(ctx, _pmul(ctx, S, S), _pscale(ctx, Q0, ctx.from_int(4)))
            r = _poly_sqrt(ctx, disc)
            if r is None:
                continue
            half = ctx.inv(ctx.from_int(2))
            pairs.append((_pscale(ctx, _padd(ctx, S, r), half), _pscale(ctx, _psub(ctx, S, r), half)))
        for C1, C2 in pairs:
            if len(C1) > 3 or len(C2) > 3:
                continue
            P1 = BiPoly(ctx, [C1, B1, (ctx.one,)])
            P2 = BiPoly(ctx, [C2, B2, (ctx.one,)])
            if P1.total_degree <= 2 and P2.total_degree <= 2 and P1 * P2 == Q4:
                a, b = sorted((QuadPoly.from_bipoly(P1), QuadPoly.from_bipoly(P2)), key=QuadPoly.key)
                return a, b
    return None


def _quartic_split_rational(Q4: BiPoly):
    import sympy
    from fractions import Fraction

    x, y = sympy.symbols("x y")
    expr = sum(sympy.Rational(c.numerator, c.denominator) * x**i * y**j for i, j, c in Q4.terms())
    _, facs = sympy.factor_list(expr, x, y)
    pieces = []
    for fac, m in facs:
        pieces.extend([fac] * m)
    ctx = Q4.ctx
    for r in range(1, len(pieces)):
        for combo in itertools.combinations(range(len(pieces)), r):
            A = sympy.expand(sympy.Mul(*[pieces[i] for i in combo]))
            B = sympy.expand(sympy.Mul(*[pieces[i] for i in range(len(pieces)) if i not in combo]))
            PA, PB = sympy.Poly(A, x, y), sympy.Poly(B, x, y)
            if PA.degree(x) != 2 or PB.degree(x) != 2 or PA.total_degree() > 2 or PB.total_degree() > 2:
                continue
            polys = []
            for Pz in (PA, PB):
                terms = {}
                for (i, j), c in Pz.terms():
                    n, d = sympy.fraction(sympy.Rational(c))
                    terms[(i, j)] = Fraction(int(n), int(d))
                polys.append(BiPoly.from_terms(ctx, terms))
            lc = polys[0].coeff(2, 0)
            polys = [polys[0].scale(ctx.inv(lc)), polys[1].scale(lc)]
            if polys[0] * polys[1] == Q4:
                a, b = sorted(map(QuadPoly.from_bipoly, polys), key=QuadPoly.key)
                return a, b
    return None


def _from_sympy(ctx: FieldCtx, P) -> BiPoly:
    import sympy
    from fractions import Fraction

    terms = {}
    for (i, j), c in P.terms():
        n, d = sympy.fraction(sympy.Rational(c))
        terms[(i, j)] = Fraction(int(n), int(d))
    return BiPoly.from_terms(ctx, terms)


def quad_factors_rational(F: BiPoly) -> list[QuadPoly]:
    """Every factor of total degree <= 2 involving X, over Q (via sympy)."""
    import sympy

    ctx = F.ctx
    if ctx.p != 0:
        raise FieldError("quad_factors_rational works over Q only")
    x, y = sympy.symbols("x y")
    expr = sum(sympy.Rational(c.numerator, c.denominator) * x**i * y**j for i, j, c in F.terms())
    _, facs = sympy.factor_list(expr, x, y)
    small = [(_from_sympy(ctx, sympy.Poly(fac, x, y)), m) for fac, m in facs]
    small = [(P, m) for P, m in small if 1 <= P.total_degree <= 2]
    found = []
    for exps in itertools.product(*[range(min(m, 2) + 1) for _, m in small]):
        if not any(exps):
            continue
        P = BiPoly.const(ctx, ctx.one)
        for (Q, _), e in zip(small, exps):
            P = P * Q ** e if e else P
        if P.total_degree <= 2 and P.deg_x >= 1:
            found.append(P)
    return canonical_quads(found)


def dickson_pair_factors(n: int, a, a2, mu, ctx: FieldCtx) -> list[BiPoly]:
    """Base-field factors of degree <= 2 of D_n(X, a) - mu D_n(Y, a2).

    With s = a / a2 the candidates are X^2 - w XY + s Y^2 + (w^2 - 4s) a2 for
    the roots w in K of D_n(W, s) - 2 mu (collapsing to X - (w/2) Y when
    w^2 = 4s).  This covers both D_n(X,a) - D_n(bY,a) and D_n(X,a) + D_n(bY,a)
    with b^2 = s.  For a = a2 = 0 the factors come from Z^n - mu.  Every
    returned factor is checked by exact division.
    """
    if n < 1:
        raise ValueError("n must be positive")
    X, Y = BiPoly.X(ctx), BiPoly.Y(ctx)
    target = BiPoly.from_x(dickson(n, a, ctx)) - BiPoly.from_y(dickson(n, a2, ctx).scale(mu))
    cands = []
    if a == 0 and a2 == 0:
        for fac, _ in ufactor.factor(UniPoly(ctx, [ctx.neg(mu)] + [ctx.zero] * (n - 1) + [ctx.one])):
            if fac.degree <= 2:
                # homogenize fac(X/Y) Y^deg
                d = fac.degree
                cands.append(BiPoly.from_terms(ctx, {(i, d - i): c for i, c in enumerate(fac.coeffs) if c != 0}))
    elif a != 0 and a2 != 0:
        s = ctx.div(a, a2)
        P = dickson(n, s, ctx) - UniPoly(ctx, [ctx.mul(ctx.from_int(2), mu)])
        four_s = ctx.mul(ctx.from_int(4), s)
        for w in sorted(set(roots_of(ctx, P)), key=ctx.key):
            ww = ctx.mul(w, w)
            if ww == four_s:
                if ctx.p == 2:
                    continue
                cands.append(X - Y.scale(ctx.div(w, ctx.from_int(2))))
            else:
                cands.append(BiPoly.from_terms(ctx, {(2, 0): ctx.one, (1, 1): ctx.neg(w), (0, 2): s,
                                                     (0, 0): ctx.mul(ctx.sub(ww, four_s), a2)}))
    return [q for q in cands if divide_monic_in_x(target, q) is not None]


def linear_factors(q: BiPoly) -> list[BiPoly]:
    """Linear factors over the base field of a quadratic q monic in X up to a constant."""
    ctx = q.ctx
    if q.total_degree <= 1:
        return [q] if q.total_degree == 1 else []
    if q.deg_x < 2:
        # X + c(Y) with deg c = 2 is irreducible; other shapes are not handled
        return []
    qm = q.scale(ctx.inv(q.coeff(2, 0)))
    out = []
    if ctx.p == 2:
        for c1, c0 in itertools.product(ctx.lex_elements(), repeat=2):
            lin = BiPoly(ctx, [(c0, c1), (ctx.one,)])
            if divide_monic_in_x(qm, lin) is not None:
                out.append(lin)
        return out
    disc = discriminant_x(qm).coeffs
    r = _poly_sqrt(ctx, disc)
    if r is None:
        return []
    b = qm.rows[1] if len(qm.rows) > 1 else ()
    half = ctx.inv(ctx.from_int(2))
    for sgn in (r, _pneg(ctx, r)):
        c = _pscale(ctx, _padd(ctx, b, sgn), half)
        out.append(BiPoly(ctx, [c, (ctx.one,)]))
    return out
