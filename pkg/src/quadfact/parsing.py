"""Field specs and the polynomial text grammar shared by the library and the CLI.

Grammar (whitespace ignored)::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := ('+' | '-') unary | power
    power  := atom ('^' INT)?
    atom   := INT | 't' | VAR | '(' expr ')'

``VAR`` is ``x`` for univariate input; bivariate printing also uses ``y``.
Division is only allowed by nonzero constants.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .field import GF, FieldCtx, FieldError, is_prime, prime_factors, rationals


class PolySyntaxError(ValueError):
    def __init__(self, msg: str, column: int):
        super().__init__(f"{msg} at column {column}")
        self.column = column


_FIELD_RE = re.compile(
    r"^\s*GF\(\s*(\d+)\s*(?:\^\s*(\d+)\s*)?(?:;\s*([-\d,\s]+))?\)\s*$", re.IGNORECASE)


def parse_field(text: str) -> FieldCtx:
    """``Q``, ``GF(p)``, ``GF(p^k)`` or ``GF(p^k;m0,m1,...,mk)``; ``GF(q)`` also
    accepts a prime power q."""
    if text.strip().upper() in ("Q", "QQ"):
        return rationals()
    m = _FIELD_RE.match(text)
    if not m:
        raise FieldError(f"malformed field spec {text!r}")
    p = int(m.group(1))
    k = int(m.group(2) or 1)
    if m.group(2) is None and not m.group(3) and not is_prime(p):
        # GF(q) for a prime power q
        pf = prime_factors(p)
        if len(pf) == 1:
            q, p, k = p, pf[0], 0
            while p ** k < q:
                k += 1
    modulus = None
    if m.group(3):
        modulus = tuple(int(c) % p for c in m.group(3).split(","))
        if len(modulus) != k + 1:
            raise FieldError(f"explicit modulus must have {k + 1} coefficients")
    return GF(p, k, modulus)


@dataclass
class _Tok:
    kind: str
    text: str
    col: int


_TOKEN_RE = re.compile(r"\s*(?:(\d+)|([A-Za-z]+)|(.))")


def _tokenize(text: str) -> list[_Tok]:
    toks = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None or m.end() == pos:
            break
        col = m.start(m.lastindex) + 1
        if m.group(1):
            toks.append(_Tok("int", m.group(1), col))
        elif m.group(2):
            toks.append(_Tok("name", m.group(2), col))
        else:
            ch = m.group(3)
            if ch not in "+-*/^()":
                raise PolySyntaxError(f"unexpected character {ch!r}", col)
            toks.append(_Tok(ch, ch, col))
        pos = m.end()
    toks.append(_Tok("end", "", len(text) + 1))
    return toks


class _Parser:
    def __init__(self, text, ctx, variables):
        from .unipoly import UniPoly
        self.UniPoly = UniPoly
        self.toks = _tokenize(text)
        self.i = 0
        self.ctx = ctx
        self.variables = variables

    def peek(self):
        return self.toks[self.i]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def expect(self, kind):
        tok = self.take()
        if tok.kind != kind:
            raise PolySyntaxError(f"expected {kind!r}", tok.col)
        return tok

    def parse(self):
        if self.peek().kind == "end":
            raise PolySyntaxError("empty expression", self.peek().col)
        value = self.expr()
        tok = self.peek()
        if tok.kind != "end":
            raise PolySyntaxError(f"unexpected {tok.text!r}", tok.col)
        return value

    def expr(self):
        value = self.term()
        while self.peek().kind in "+-":
            op = self.take().kind
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self):
        value = self.unary()
        while self.peek().kind in ("*", "/"):
            tok = self.take()
            rhs = self.unary()
            if tok.kind == "*":
                value = value * rhs
            else:
                value = self._divide(value, rhs, tok)
        return value

    def _divide(self, value, rhs, tok):
        if not rhs.is_const():
            raise PolySyntaxError("division by a non-constant", tok.col)
        if rhs.is_zero():
            if self.ctx.p:
                raise FieldError(f"coefficient not in {self.ctx.spec()}: "
                                 f"division by a multiple of {self.ctx.p} (column {tok.col})")
            raise PolySyntaxError("division by zero", tok.col)
        return value.scale(self.ctx.inv(rhs.coeffs[0]))

    def unary(self):
        if self.peek().kind == "-":
            self.take()
            return -self.unary()
        if self.peek().kind == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek().kind == "^":
            self.take()
            tok = self.peek()
            if tok.kind != "int":
                raise PolySyntaxError("expected integer exponent", tok.col)
            self.take()
            base = base ** int(tok.text)
        return base

    def atom(self):
        tok = self.take()
        ctx, P = self.ctx, self.UniPoly
        if tok.kind == "int":
            return P(ctx, [ctx.from_int(int(tok.text))])
        if tok.kind == "name":
            name = tok.text.lower()
            if name == "t":
                if ctx.p == 0 or ctx.k == 1:
                    raise PolySyntaxError(f"generator t is undefined over {ctx.spec()}", tok.col)
                return P(ctx, [ctx.p])
            if name in self.variables:
                return self.variables[name]
            raise PolySyntaxError(f"unknown symbol {tok.text!r}", tok.col)
        if tok.kind == "(":
            value = self.expr()
            self.expect(")")
            return value
        raise PolySyntaxError(f"unexpected {tok.text or 'end of input'!r}", tok.col)


def parse_poly(text: str, ctx: FieldCtx):
    """Parse a univariate polynomial in ``x`` over ``ctx``."""
    from .unipoly import UniPoly
    return _Parser(text, ctx, {"x": UniPoly.x(ctx)}).parse()


def parse_elem(text: str, ctx: FieldCtx):
    """Parse a constant expression (may use ``t``) to a raw field value."""
    p = _Parser(text, ctx, {}).parse()
    return p.coeff(0)


# --- printing ----------------------------------------------------------------

def format_coeff(ctx: FieldCtx, c) -> tuple[str, bool]:
    """Render a nonzero raw coefficient; returns (text, is_negative)."""
    if ctx.p == 0:
        neg = c < 0
        return str(-c if neg else c), neg
    s = ctx.to_str(c)
    if ctx.k > 1 and sum(1 for d in ctx.vec(c) if d) > 1:
        s = f"({s})"
    return s, False


def format_terms(ctx: FieldCtx, terms) -> str:
    """``terms``: iterable of (raw coefficient, monomial text), highest first."""
    parts = []
    for c, mono in terms:
        if c == 0:
            continue
        s, neg = format_coeff(ctx, c)
        if mono:
            body = mono if s == "1" else f"{s}*{mono}"
        else:
            body = s
        if not parts:
            parts.append(f"-{body}" if neg else body)
        else:
            parts.append(f" - {body}" if neg else f" + {body}")
    return "".join(parts) if parts else "0"


def _mono(var: str, e: int) -> str:
    if e == 0:
        return ""
    return var if e == 1 else f"{var}^{e}"


def format_poly(f, var: str = "x") -> str:
    return format_terms(f.ctx, [(c, _mono(var, i)) for i, c in reversed(list(enumerate(f.coeffs)))])


def format_bipoly(F, xvar: str = "x", yvar: str = "y") -> str:
    """Graded order: total degree descending, then X-degree descending."""
    items = sorted(F.terms(), key=lambda t: (-(t[0] + t[1]), -t[0]))
    terms = []
    for i, j, c in items:
        mono = "*".join(m for m in (_mono(xvar, i), _mono(yvar, j)) if m)
        terms.append((c, mono))
    return format_terms(F.ctx, terms)
