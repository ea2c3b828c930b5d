"""Dense univariate polynomials over a :class:`~quadfact.field.FieldCtx`."""

from __future__ import annotations

import functools
from fractions import Fraction
from typing import Iterable, Sequence

from .field import FieldCtx, FieldElem, FieldError, roots_of


class UniPoly:
    """Immutable dense polynomial; ``coeffs`` holds raw values, constant first.

    Trailing zeros are never stored, so the zero polynomial has ``coeffs == ()``
    and degree -1.
    """

    __slots__ = ("ctx", "coeffs", "_hash")

    def __init__(self, ctx: FieldCtx, coeffs: Iterable = ()):
        c = list(coeffs)
        while c and c[-1] == 0:
            c.pop()
        self.ctx = ctx
        self.coeffs = tuple(c)
        self._hash = None

    # construction ----------------------------------------------------------
    @classmethod
    def from_values(cls, ctx: FieldCtx, values: Iterable) -> "UniPoly":
        """Build from ints / Fractions / FieldElems, constant first."""
        return cls(ctx, [ctx.coerce(v) for v in values])

    @classmethod
    def const(cls, ctx: FieldCtx, c) -> "UniPoly":
        return cls(ctx, [c])

    @classmethod
    def x(cls, ctx: FieldCtx) -> "UniPoly":
        return cls(ctx, [ctx.zero, ctx.one])

    @classmethod
    def monomial(cls, ctx: FieldCtx, n: int, c=None) -> "UniPoly":
        return cls(ctx, [ctx.zero] * n + [ctx.one if c is None else c])

    @classmethod
    def linear(cls, ctx: FieldCtx, a, b) -> "UniPoly":
        """a*X + b (raw values)."""
        return cls(ctx, [b, a])

    # basic properties ------------------------------------------------------
    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __len__(self):
        return len(self.coeffs)

    @property
    def lc(self):
        if not self.coeffs:
            raise FieldError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def coeff(self, i: int):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else self.ctx.zero

    def __getitem__(self, i: int) -> FieldElem:
        return self.ctx.elem(self.coeff(i))

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_const(self) -> bool:
        return len(self.coeffs) <= 1

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == self.ctx.one

    def __eq__(self, other):
        if not isinstance(other, UniPoly):
            return NotImplemented
        return self.ctx == other.ctx and self.coeffs == other.coeffs

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ctx, self.coeffs))
        return self._hash

    def __repr__(self):
        return f"UniPoly({self.ctx.spec()}, {self.to_str()})"

    def __str__(self):
        return self.to_str()

    def to_str(self, var: str = "x") -> str:
        from .parsing import format_poly
        return format_poly(self, var)

    def key(self):
        """Canonical sort key."""
        return (self.degree, tuple(self.ctx.key(c) for c in reversed(self.coeffs)))

    # arithmetic ------------------------------------------------------------
    def _coerce(self, other) -> "UniPoly":
        if isinstance(other, UniPoly):
            self.ctx.check(other.ctx)
            return other
        if isinstance(other, (int, Fraction, FieldElem)):
            return UniPoly(self.ctx, [self.ctx.coerce(other)])
        raise TypeError(f"cannot combine UniPoly with {type(other).__name__}")

    def __add__(self, other):
        other = self._coerce(other)
        add = self.ctx.add
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return UniPoly(self.ctx, [add(x, b[i]) if i < len(b) else x for i, x in enumerate(a)])

    __radd__ = __add__

    def __neg__(self):
        neg = self.ctx.neg
        return UniPoly(self.ctx, [neg(c) for c in self.coeffs])

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        ctx = self.ctx
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return UniPoly(ctx)
        add, mul = ctx.add, ctx.mul
        out = [ctx.zero] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x == 0:
                continue
            for j, y in enumerate(b):
                if y != 0:
                    out[i + j] = add(out[i + j], mul(x, y))
        return UniPoly(ctx, out)

    __rmul__ = __mul__

    def scale(self, c) -> "UniPoly":
        mul = self.ctx.mul
        return UniPoly(self.ctx, [mul(c, x) for x in self.coeffs])

    def __pow__(self, e: int) -> "UniPoly":
        if e < 0:
            raise ValueError("negative exponent")
        result = UniPoly(self.ctx, [self.ctx.one])
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def divmod(self, other: "UniPoly") -> tuple["UniPoly", "UniPoly"]:
        other = self._coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        ctx = self.ctx
        rem = list(self.coeffs)
        db = other.degree
        inv = ctx.inv(other.lc)
        quo = [ctx.zero] * max(0, len(rem) - db)
        sub, mul = ctx.sub, ctx.mul
        b = other.coeffs
        for d in range(len(rem) - 1, db - 1, -1):
            c = rem[d]
            if c == 0:
                continue
            c = mul(c, inv)
            quo[d - db] = c
            for i in range(db + 1):
                if b[i] != 0:
                    rem[d - db + i] = sub(rem[d - db + i], mul(c, b[i]))
        return UniPoly(ctx, quo), UniPoly(ctx, rem[:db] if db > 0 else [])

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def __mod__(self, other):
        return self.divmod(other)[1]

    def monic(self) -> "UniPoly":
        return self.scale(self.ctx.inv(self.lc))

    # evaluation & composition ------------------------------------------------
    def eval_raw(self, x):
        ctx = self.ctx
        acc = ctx.zero
        add, mul = ctx.add, ctx.mul
        for c in reversed(self.coeffs):
            acc = add(mul(acc, x), c)
        return acc

    def __call__(self, x):
        if isinstance(x, UniPoly):
            return compose(self, x)
        return self.ctx.elem(self.eval_raw(self.ctx.coerce(x)))

    def derivative(self) -> "UniPoly":
        ctx = self.ctx
        return UniPoly(ctx, [ctx.mul(ctx.from_int(i), c) for i, c in enumerate(self.coeffs)][1:])

    def map_coeffs(self, fn) -> "UniPoly":
        return UniPoly(self.ctx, [fn(c) for c in self.coeffs])

    def roots(self) -> list:
        return roots_of(self.ctx, self)


def compose(outer: UniPoly, inner: UniPoly) -> UniPoly:
    """outer(inner(X)) by Horner's rule."""
    outer.ctx.check(inner.ctx)
    acc = UniPoly(outer.ctx)
    for c in reversed(outer.coeffs):
        acc = acc * inner + UniPoly(outer.ctx, [c])
    return acc


def linear(ctx: FieldCtx, a, b) -> UniPoly:
    return UniPoly(ctx, [b, a])


def invert_linear(lin: UniPoly) -> UniPoly:
    """Compositional inverse of a*X + b."""
    if lin.degree != 1:
        raise ValueError("not a linear polynomial")
    ctx = lin.ctx
    a, b = lin.coeffs[1], lin.coeffs[0]
    ia = ctx.inv(a)
    return UniPoly(ctx, [ctx.neg(ctx.mul(b, ia)), ia])


@functools.lru_cache(maxsize=4096)
def _dickson_raw(ctx: FieldCtx, n: int, a) -> UniPoly:
    two = ctx.from_int(2)
    d0 = UniPoly(ctx, [two])
    if n == 0:
        return d0
    x = UniPoly.x(ctx)
    d1 = x
    for _ in range(n - 1):
        d0, d1 = d1, x * d1 - d0.scale(a)
    return d1


def dickson(n: int, a, ctx: FieldCtx | None = None) -> UniPoly:
    """D_n(X, a): D_0 = 2, D_1 = X, D_n = X D_{n-1} - a D_{n-2}.

    ``a`` is a FieldElem, or a raw value of ``ctx``.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    if isinstance(a, FieldElem):
        ctx, a = a.ctx, a.v
    elif ctx is None:
        raise TypeError("pass a FieldElem or an explicit ctx")
    elif ctx.p == 0:
        a = Fraction(a)
    return _dickson_raw(ctx, n, a)


def frobenius_decompose(f: UniPoly) -> UniPoly | None:
    """f0 with f = f0(X^p), or None (always None over Q)."""
    p = f.ctx.p
    if p == 0:
        return None
    c = f.coeffs
    if any(c[i] != 0 for i in range(len(c)) if i % p):
        return None
    return UniPoly(f.ctx, c[::p])


def pth_root(f: UniPoly) -> UniPoly | None:
    """u with u^p = f, or None.  Coefficients of f0 are replaced by their p-th roots."""
    f0 = frobenius_decompose(f)
    if f0 is None:
        return None
    return f0.map_coeffs(f.ctx.frob_inv)


def shift_x(f: UniPoly, c) -> UniPoly:
    """f(X + c)."""
    return compose(f, UniPoly(f.ctx, [c, f.ctx.one]))


def normalize_right(f: UniPoly) -> tuple[UniPoly, UniPoly]:
    """Split f = L(f_n) with f_n monic, zero constant term and L linear."""
    ctx = f.ctx
    lc, c0 = f.lc, f.coeff(0)
    fn = (f - UniPoly(ctx, [c0])).scale(ctx.inv(lc))
    return UniPoly(ctx, [c0, lc]), fn


def from_values(ctx: FieldCtx, values: Sequence) -> UniPoly:
    return UniPoly.from_values(ctx, values)
