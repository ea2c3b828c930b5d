"""Exact arithmetic over Q and over finite fields F_{p^k}.

Elements are handled at two levels.  Hot loops work on *raw* values:
``fractions.Fraction`` for Q, and for F_{p^k} the integer
``c_0 + c_1 p + ... + c_{k-1} p^{k-1}`` encoding the coefficient vector of
``c_0 + c_1 t + ... + c_{k-1} t^{k-1}`` modulo the defining polynomial.
:class:`FieldElem` wraps a raw value together with its context for
user-facing code.
"""

from __future__ import annotations

import functools
import itertools
import math
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

from .config import DEFAULT


class FieldError(ValueError):
    pass


class ContextMismatch(FieldError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    r = math.isqrt(n)
    f = 3
    while f <= r:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_factors(n: int) -> list[int]:
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


def divisors(n: int) -> list[int]:
    n = abs(n)
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


# --- polynomials over F_p as coefficient lists (constant first) -------------
# Only used to build extension fields; the general polynomial type lives in
# unipoly.py and sits on top of this module.

def _fp_trim(c: list[int]) -> list[int]:
    while c and c[-1] == 0:
        c.pop()
    return c


def _fp_rem(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    a = _fp_trim(list(a))
    db = len(b) - 1
    inv = pow(b[-1], p - 2, p)
    while len(a) - 1 >= db and a:
        c = a[-1] * inv % p
        shift = len(a) - 1 - db
        for i, bi in enumerate(b):
            a[shift + i] = (a[shift + i] - c * bi) % p
        _fp_trim(a)
    return a


def _has_factor_of_degree(mod: Sequence[int], d: int, p: int) -> bool:
    for tail in itertools.product(range(p), repeat=d):
        if not _fp_rem(mod, list(tail) + [1], p):
            return True
    return False


def is_irreducible_mod_p(mod: Sequence[int], p: int) -> bool:
    """Exhaustive trial division by every monic polynomial of degree <= k/2."""
    k = len(mod) - 1
    if k < 1 or mod[-1] % p == 0:
        return False
    return not any(_has_factor_of_degree(mod, d, p) for d in range(1, k // 2 + 1))


@functools.lru_cache(maxsize=None)
def least_irreducible(p: int, k: int) -> tuple[int, ...]:
    """Lexicographically least monic irreducible of degree k over F_p.

    Coefficient tuples (c_0, ..., c_{k-1}) are compared with c_0 first.
    """
    for tail in itertools.product(range(p), repeat=k):
        mod = tuple(tail) + (1,)
        if is_irreducible_mod_p(mod, p):
            return mod
    raise FieldError(f"no irreducible polynomial of degree {k} over F_{p}")


# --- contexts ----------------------------------------------------------------

class FieldCtx:
    """A coefficient field: Q (``p == 0``) or F_p[t]/(modulus)."""

    def __init__(self, p: int = 0, modulus: Sequence[int] | None = None, *,
                 max_size: int = DEFAULT.max_field_size):
        self.p = p
        if p == 0:
            self.k = 1
            self.modulus = None
            self.q = None
            self.zero = Fraction(0)
            self.one = Fraction(1)
            return
        if not is_prime(p):
            raise FieldError(f"{p} is not prime")
        if modulus is None:
            modulus = (0, 1)
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) < 2 or modulus[-1] != 1:
            raise FieldError("modulus must be monic of degree >= 1")
        self.k = len(modulus) - 1
        self.q = p ** self.k
        if self.q > max_size:
            raise FieldError(f"field of order {self.q} exceeds the configured bound {max_size}")
        if self.k > 1 and not is_irreducible_mod_p(modulus, p):
            raise FieldError(f"modulus {modulus} is reducible over F_{p}")
        self.modulus = modulus
        self.zero = 0
        self.one = 1
        self._pw = [p ** i for i in range(self.k)]
        self._exp: list[int] | None = None
        self._log: list[int] | None = None
        self._add_table: list[int] | None = None
        if self.k > 1:
            self._build_tables()

    # identity ---------------------------------------------------------------
    @property
    def is_finite(self) -> bool:
        return self.p != 0

    @property
    def char(self) -> int:
        return self.p

    @property
    def size(self) -> int | None:
        return self.q

    def _ident(self):
        return (self.p, self.modulus)

    def __eq__(self, other):
        return isinstance(other, FieldCtx) and self._ident() == other._ident()

    def __hash__(self):
        return hash(self._ident())

    def __repr__(self):
        return f"FieldCtx({self.spec()})"

    def spec(self) -> str:
        """Field spec string in the shared CLI syntax."""
        if self.p == 0:
            return "Q"
        if self.k == 1:
            return f"GF({self.p})"
        if self.modulus == least_irreducible(self.p, self.k):
            return f"GF({self.p}^{self.k})"
        return f"GF({self.p}^{self.k};{','.join(map(str, self.modulus))})"

    def check(self, other: "FieldCtx"):
        if other is not self and other != self:
            raise ContextMismatch(f"{self.spec()} vs {other.spec()}")

    # digit-vector helpers (extension fields) ---------------------------------
    def vec(self, a: int) -> tuple[int, ...]:
        p = self.p
        out = []
        for _ in range(self.k):
            a, r = divmod(a, p)
            out.append(r)
        return tuple(out)

    def from_vec(self, v: Sequence[int]) -> int:
        if len(v) > self.k:
            # reduce a longer vector modulo the defining polynomial
            v = _fp_rem([c % self.p for c in v], self.modulus, self.p)
        return sum((c % self.p) * w for c, w in zip(v, self._pw))

    def _vec_mul(self, a: int, b: int) -> int:
        p, k, mod = self.p, self.k, self.modulus
        va, vb = self.vec(a), self.vec(b)
        prod = [0] * (2 * k - 1)
        for i, x in enumerate(va):
            if x:
                for j, y in enumerate(vb):
                    prod[i + j] += x * y
        for d in range(2 * k - 2, k - 1, -1):
            c = prod[d] % p
            if c:
                for i in range(k):
                    prod[d - k + i] -= c * mod[i]
        return sum((prod[i] % p) * self._pw[i] for i in range(k))

    def _vec_add(self, a: int, b: int) -> int:
        p = self.p
        out, w = 0, 1
        while a or b:
            a, x = divmod(a, p)
            b, y = divmod(b, p)
            out += ((x + y) % p) * w
            w *= p
        return out

    def _vec_neg(self, a: int) -> int:
        p = self.p
        out, w = 0, 1
        while a:
            a, x = divmod(a, p)
            out += ((-x) % p) * w
            w *= p
        return out

    def _build_tables(self):
        q = self.q
        if self.k == 1:
            mul = lambda a, b: a * b % self.p  # noqa: E731
        else:
            mul = self._vec_mul
        order = q - 1
        primes = prime_factors(order)

        def power(a, e):
            r = 1
            while e:
                if e & 1:
                    r = mul(r, a)
                a = mul(a, a)
                e >>= 1
            return r

        gen = next(g for g in range(1, q)
                   if all(power(g, order // r) != 1 for r in primes))
        exp = [1] * order
        for i in range(1, order):
            exp[i] = mul(exp[i - 1], gen)
        log = [0] * q
        for i, v in enumerate(exp):
            log[v] = i
        self.generator = gen
        self._exp, self._log = exp, log
        if self.k > 1 and q <= 256:
            self._add_table = [self._vec_add(a, b) for a in range(q) for b in range(q)]

    def _logs(self):
        if self._exp is None:
            self._build_tables()
        return self._exp, self._log

    # raw arithmetic -------------------------------------------------------
    def add(self, a, b):
        if self.p == 0:
            return a + b
        if self.k == 1:
            return (a + b) % self.p
        if self._add_table is not None:
            return self._add_table[a * self.q + b]
        return self._vec_add(a, b)

    def neg(self, a):
        if self.p == 0:
            return -a
        if self.k == 1:
            return -a % self.p
        return self._vec_neg(a)

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if self.p == 0:
            return a * b
        if self.k == 1:
            return a * b % self.p
        if not a or not b:
            return 0
        exp, log = self._exp, self._log
        return exp[(log[a] + log[b]) % (self.q - 1)]

    def inv(self, a):
        if self.p == 0:
            if a == 0:
                raise ZeroDivisionError("division by zero in Q")
            return 1 / a
        if not a:
            raise ZeroDivisionError(f"division by zero in {self.spec()}")
        if self.k == 1:
            return pow(a, self.p - 2, self.p)
        exp, log = self._exp, self._log
        return exp[-log[a] % (self.q - 1)]

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, e: int):
        if e < 0:
            return self.pow(self.inv(a), -e)
        if self.p == 0:
            return a ** e
        if self.k == 1:
            return pow(a, e, self.p)
        if not a:
            return 1 if e == 0 else 0
        exp, log = self._exp, self._log
        return exp[log[a] * e % (self.q - 1)]

    def from_int(self, n: int):
        if self.p == 0:
            return Fraction(n)
        if self.k == 1:
            return n % self.p
        return n % self.p  # prime-subfield element: constant digit only

    def from_rational(self, num: int, den: int = 1):
        if self.p == 0:
            return Fraction(num, den)
        if den % self.p == 0:
            raise FieldError(f"{num}/{den} is not an element of {self.spec()}")
        return self.div(self.from_int(num), self.from_int(den))

    def coerce(self, x):
        """Accept FieldElem, int, Fraction, or an already-raw value."""
        if isinstance(x, FieldElem):
            self.check(x.ctx)
            return x.v
        if isinstance(x, Fraction):
            return self.from_rational(x.numerator, x.denominator)
        if isinstance(x, int):
            return self.from_int(x)
        raise TypeError(f"cannot coerce {x!r} into {self.spec()}")

    def elem(self, raw) -> "FieldElem":
        return FieldElem(self, raw)

    def gen(self) -> "FieldElem":
        """The class of t (for k = 1 this is the element t = 0 + ... hence rejected)."""
        if self.p == 0 or self.k == 1:
            raise FieldError(f"{self.spec()} has no extension generator t")
        return FieldElem(self, self.p)

    def elements(self) -> Iterator:
        """Raw elements in lexicographic coefficient order (c_0 compared first)."""
        if self.p == 0:
            raise FieldError("Q is infinite")
        for v in itertools.product(range(self.p), repeat=self.k):
            yield self.from_vec(v)

    def lex_elements(self) -> list:
        if self.p == 0:
            raise FieldError("Q is infinite")
        return sorted(range(self.q), key=self.key)

    def key(self, a):
        """Deterministic total order: Q by value, finite fields by coefficient vector."""
        if self.p == 0:
            return a
        if self.k == 1:
            return a
        return self.vec(a)

    def frob(self, a):
        return self.pow(a, self.p) if self.p else a

    def frob_inv(self, a):
        """The unique p-th root (finite fields are perfect)."""
        if self.p == 0:
            return a
        return self.pow(a, self.p ** (self.k - 1))

    def in_prime_field(self, a) -> bool:
        return self.p == 0 or a < self.p

    def to_str(self, a) -> str:
        if self.p == 0:
            return str(a)
        if self.k == 1:
            return str(a)
        terms = []
        for i, c in reversed(list(enumerate(self.vec(a)))):
            if not c:
                continue
            mono = "" if i == 0 else ("t" if i == 1 else f"t^{i}")
            if not mono:
                terms.append(str(c))
            elif c == 1:
                terms.append(mono)
            else:
                terms.append(f"{c}*{mono}")
        return " + ".join(terms) if terms else "0"

    # multiplicative structure -----------------------------------------------
    def order(self, a) -> int:
        if a == 0:
            raise FieldError("zero has no multiplicative order")
        if self.p == 0:
            if a == 1:
                return 1
            if a == -1:
                return 2
            raise FieldError(f"{a} has infinite order in Q")
        exp, log = self._logs()
        n = self.q - 1
        return n // math.gcd(n, log[a])

    def nth_roots(self, a, n: int) -> list:
        """All y with y^n = a, sorted by :meth:`key`."""
        if n < 1:
            raise ValueError("n must be positive")
        if self.p == 0:
            return _rational_nth_roots(a, n)
        if a == 0:
            return [0]
        exp, log = self._logs()
        m = self.q - 1
        g = math.gcd(n, m)
        e = log[a]
        if e % g:
            return []
        # n x = e (mod m) has g solutions modulo m
        m_g = m // g
        x0 = (e // g) * pow(n // g, -1, m_g) % m_g if m_g > 1 else 0
        return sorted({exp[(x0 + j * m_g) % m] for j in range(g)}, key=self.key)

    def sqrt(self, a):
        """Canonical square root (raw) or None."""
        if self.p == 0:
            roots = _rational_nth_roots(a, 2)
            return max(roots) if roots else None
        roots = self.nth_roots(a, 2)
        return roots[0] if roots else None


def _rational_nth_roots(a: Fraction, n: int) -> list[Fraction]:
    if a == 0:
        return [Fraction(0)]
    num, den = a.numerator, a.denominator
    sign = 1
    if num < 0:
        if n % 2 == 0:
            return []
        sign, num = -1, -num
    rn, rd = _int_root(num, n), _int_root(den, n)
    if rn is None or rd is None:
        return []
    r = Fraction(sign * rn, rd)
    return sorted({r, -r}) if n % 2 == 0 else [r]


def _int_root(x: int, n: int) -> int | None:
    if x in (0, 1):
        return x
    r = round(x ** (1.0 / n)) if x.bit_length() < 1000 else None
    if r is None:
        lo, hi = 0, 1 << (x.bit_length() // n + 1)
        while lo < hi:
            mid = (lo + hi + 1) // 2
            if mid ** n <= x:
                lo = mid
            else:
                hi = mid - 1
        r = lo
    for c in (r - 1, r, r + 1):
        if c >= 0 and c ** n == x:
            return c
    return None


# --- public element type ----------------------------------------------------

class FieldElem:
    __slots__ = ("ctx", "v")

    def __init__(self, ctx: FieldCtx, v):
        self.ctx = ctx
        self.v = v

    def _other(self, y):
        if isinstance(y, FieldElem):
            self.ctx.check(y.ctx)
            return y.v
        if isinstance(y, (int, Fraction)):
            return self.ctx.coerce(y)
        return NotImplemented

    def _wrap(self, v):
        return FieldElem(self.ctx, v)

    def __add__(self, y):
        y = self._other(y)
        return NotImplemented if y is NotImplemented else self._wrap(self.ctx.add(self.v, y))

    __radd__ = __add__

    def __sub__(self, y):
        y = self._other(y)
        return NotImplemented if y is NotImplemented else self._wrap(self.ctx.sub(self.v, y))

    def __rsub__(self, y):
        y = self._other(y)
        return NotImplemented if y is NotImplemented else self._wrap(self.ctx.sub(y, self.v))

    def __mul__(self, y):
        y = self._other(y)
        return NotImplemented if y is NotImplemented else self._wrap(self.ctx.mul(self.v, y))

    __rmul__ = __mul__

    def __truediv__(self, y):
        y = self._other(y)
        return NotImplemented if y is NotImplemented else self._wrap(self.ctx.div(self.v, y))

    def __rtruediv__(self, y):
        y = self._other(y)
        return NotImplemented if y is NotImplemented else self._wrap(self.ctx.div(y, self.v))

    def __neg__(self):
        return self._wrap(self.ctx.neg(self.v))

    def __pow__(self, e: int):
        return self._wrap(self.ctx.pow(self.v, e))

    def __eq__(self, y):
        if isinstance(y, FieldElem):
            return self.ctx == y.ctx and self.v == y.v
        if isinstance(y, (int, Fraction)):
            try:
                return self.v == self.ctx.coerce(y)
            except FieldError:
                return False
        return NotImplemented

    def __hash__(self):
        return hash((self.ctx, self.v))

    def __bool__(self):
        return self.v != 0

    def __repr__(self):
        return f"FieldElem({self.ctx.spec()}, {self.ctx.to_str(self.v)})"

    def __str__(self):
        return self.ctx.to_str(self.v)

    def inverse(self) -> "FieldElem":
        return self._wrap(self.ctx.inv(self.v))

    def order(self) -> int:
        return self.ctx.order(self.v)


# --- constructors --------------------------------------------------------------

@functools.lru_cache(maxsize=None)
def rationals() -> FieldCtx:
    return FieldCtx(0)


@functools.lru_cache(maxsize=None)
def GF(p: int, k: int = 1, modulus: tuple[int, ...] | None = None) -> FieldCtx:
    """F_{p^k}; the modulus defaults to the lexicographically least irreducible."""
    if not is_prime(p):
        raise FieldError(f"{p} is not prime")
    if k < 1:
        raise FieldError("extension degree must be >= 1")
    if p ** k > DEFAULT.max_field_size:
        raise FieldError(f"field of order {p ** k} exceeds the configured bound")
    if modulus is None:
        modulus = (0, 1) if k == 1 else least_irreducible(p, k)
    elif len(modulus) - 1 != k:
        raise FieldError("modulus degree does not match k")
    return FieldCtx(p, modulus)


def field_arith(x: FieldElem, y: FieldElem, op: str) -> FieldElem:
    x.ctx.check(y.ctx)
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    if op == "div":
        return x / y
    raise ValueError(f"unknown operation {op!r}")


def min_extension_for_unity(p: int, m: int) -> int:
    """Least k with m | p^k - 1."""
    if m < 1:
        raise ValueError("m must be positive")
    if m % p == 0:
        raise FieldError(f"{m} is divisible by the characteristic {p}")
    k, r = 1, p % m
    while r != 1 % m:
        r = r * p % m
        k += 1
    return k


def find_root_of_unity(ctx: FieldCtx, m: int) -> FieldElem:
    """Lexicographically least element of multiplicative order exactly m."""
    if ctx.p == 0:
        if m == 1:
            return ctx.elem(Fraction(1))
        if m == 2:
            return ctx.elem(Fraction(-1))
        raise FieldError(f"Q has no primitive {m}-th root of unity")
    if (ctx.q - 1) % m:
        k = min_extension_for_unity(ctx.p, m) if m % ctx.p else None
        hint = f"; extend to degree {k} over F_{ctx.p}" if k else ""
        raise FieldError(f"{ctx.spec()} has no element of order {m}{hint}")
    exp, _ = ctx._logs()
    step = (ctx.q - 1) // m
    cands = [exp[j * step] for j in range(m) if math.gcd(j, m) == 1]
    root = min(cands, key=ctx.key)
    assert ctx.order(root) == m
    return ctx.elem(root)


def roots_of(ctx: FieldCtx, f) -> list:
    """Roots of a nonzero polynomial with multiplicity, as raw values sorted by key.

    ``f`` is a UniPoly or a raw coefficient sequence (constant first).
    """
    coeffs = list(getattr(f, "coeffs", f))
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    if not coeffs:
        raise FieldError("roots of the zero polynomial are undefined")
    if ctx.p == 0:
        return _rational_roots(coeffs)
    out = []
    for r in ctx.lex_elements():
        c = coeffs
        while len(c) > 1:
            quo, rem = _synthetic_div(ctx, c, r)
            if rem != 0:
                break
            out.append(r)
            c = quo
    return out


def _synthetic_div(ctx: FieldCtx, c: Sequence, r):
    n = len(c) - 1
    quo = [ctx.zero] * n
    acc = c[-1]
    for i in range(n - 1, -1, -1):
        quo[i] = acc
        acc = ctx.add(c[i], ctx.mul(acc, r))
    return quo, acc


def _rational_roots(coeffs: list) -> list[Fraction]:
    # sympy factors the integer content; candidate enumeration over divisors
    # does not scale to the coefficient sizes that compositions produce
    import sympy

    x = sympy.Symbol("x")
    poly = sympy.Poly([sympy.Rational(c.numerator, c.denominator) for c in reversed(coeffs)], x, domain="QQ")
    out = []
    for fac, mult in poly.factor_list()[1]:
        if fac.degree() == 1:
            b, a = fac.all_coeffs()
            r = sympy.Rational(-a, b)
            out.extend([Fraction(int(r.p), int(r.q))] * mult)
    return sorted(out)


def sqrt_in_field(x: FieldElem) -> FieldElem | None:
    r = x.ctx.sqrt(x.v)
    return None if r is None else x.ctx.elem(r)


def iter_raw(ctx: FieldCtx, values: Iterable) -> list:
    return [ctx.coerce(v) for v in values]


def extension_of(ctx: FieldCtx, j: int) -> FieldCtx:
    """F_{q^j} for the finite field ctx = F_q, with its deterministic modulus."""
    if ctx.p == 0:
        raise FieldError("Q has no finite extensions in this library")
    return GF(ctx.p, ctx.k * j)


@functools.lru_cache(maxsize=None)
def _embedding_root(K: FieldCtx, E: FieldCtx):
    if K.k == 1:
        return None
    if E.k % K.k:
        raise FieldError(f"{K.spec()} does not embed into {E.spec()}")
    lifted = [E.from_int(c) for c in K.modulus]
    roots = sorted(set(roots_of(E, lifted)), key=E.key)
    if not roots:
        raise FieldError(f"no root of the modulus of {K.spec()} in {E.spec()}")
    return roots[0]


def embed(K: FieldCtx, E: FieldCtx):
    """Field embedding K -> E on raw values (identity on the prime field)."""
    if K == E:
        return lambda a: a
    theta = _embedding_root(K, E)
    if theta is None:
        return E.from_int
    powers = [E.pow(theta, i) for i in range(K.k)]

    def image(a):
        acc = E.zero
        for c, w in zip(K.vec(a), powers):
            if c:
                acc = E.add(acc, E.mul(E.from_int(c), w))
        return acc
    return image


def preimage_table(K: FieldCtx, E: FieldCtx) -> dict:
    """Inverse of :func:`embed` on its image."""
    image = embed(K, E)
    return {image(a): a for a in range(K.q)}
