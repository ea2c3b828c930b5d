"""Finite-order elements of PGL_2 over finite fields and their normal forms.

Conjugation follows ``M^s = s^-1 M s``.  Every normal form returned here is
checked by explicit multiplication before it is handed back.
"""

from __future__ import annotations

from dataclasses import dataclass

from .field import FieldCtx, FieldError, roots_of


@dataclass(frozen=True)
class PGL2Elem:
    """Class of the matrix [[a, b], [c, d]] modulo scalars (raw entries, canonical)."""

    ctx: FieldCtx
    a: object
    b: object
    c: object
    d: object

    @classmethod
    def make(cls, ctx: FieldCtx, a, b, c, d) -> "PGL2Elem":
        """Entries are raw field values."""
        if ctx.sub(ctx.mul(a, d), ctx.mul(b, c)) == 0:
            raise FieldError("singular matrix")
        lead = next(x for x in (a, b, c, d) if x != 0)
        inv = ctx.inv(lead)
        return cls(ctx, *(ctx.mul(inv, x) for x in (a, b, c, d)))

    @classmethod
    def of(cls, ctx: FieldCtx, a, b, c, d) -> "PGL2Elem":
        """Entries given as ints, Fractions or FieldElems."""
        return cls.make(ctx, *(ctx.coerce(x) for x in (a, b, c, d)))

    @classmethod
    def identity(cls, ctx: FieldCtx) -> "PGL2Elem":
        return cls.make(ctx, ctx.one, ctx.zero, ctx.zero, ctx.one)

    @classmethod
    def diag(cls, ctx: FieldCtx, x, y) -> "PGL2Elem":
        return cls.make(ctx, x, ctx.zero, ctx.zero, y)

    @property
    def entries(self):
        return self.a, self.b, self.c, self.d

    def __mul__(self, other: "PGL2Elem") -> "PGL2Elem":
        K = self.ctx
        a, b, c, d = self.entries
        e, f, g, h = other.entries
        add, mul = K.add, K.mul
        return PGL2Elem.make(K, add(mul(a, e), mul(b, g)), add(mul(a, f), mul(b, h)),
                             add(mul(c, e), mul(d, g)), add(mul(c, f), mul(d, h)))

    def inverse(self) -> "PGL2Elem":
        K = self.ctx
        return PGL2Elem.make(K, self.d, K.neg(self.b), K.neg(self.c), self.a)

    def __pow__(self, e: int) -> "PGL2Elem":
        base = self if e >= 0 else self.inverse()
        out = PGL2Elem.identity(self.ctx)
        for _ in range(abs(e)):
            out = out * base
        return out

    def conj(self, s: "PGL2Elem") -> "PGL2Elem":
        """s^-1 self s."""
        return s.inverse() * self * s

    def is_identity(self) -> bool:
        return self.b == 0 and self.c == 0 and self.a == self.d

    def __str__(self):
        t = self.ctx.to_str
        return f"[[{t(self.a)}, {t(self.b)}], [{t(self.c)}, {t(self.d)}]]"


def pgl2_order(M: PGL2Elem) -> int:
    """Least m >= 1 with M^m scalar."""
    K = M.ctx
    if K.p == 0:
        raise FieldError("order computation needs a finite field")
    bound = K.q * (K.q + 1)
    P = M
    for m in range(1, bound + 1):
        if P.is_identity():
            return m
        P = P * M
    raise AssertionError("element of PGL_2 over a finite field without finite order")


def _eig(M: PGL2Elem):
    K = M.ctx
    tr = K.add(M.a, M.d)
    det = K.sub(K.mul(M.a, M.d), K.mul(M.b, M.c))
    return sorted(set(roots_of(K, [det, K.neg(tr), K.one])), key=K.key)


def _kernel_vec(K, a, b, c, d):
    """Nonzero (x, y) with [[a, b], [c, d]] (x, y)^T = 0 for a singular matrix."""
    if a != 0 or b != 0:
        return K.neg(b), a
    return K.neg(d), c


def _from_columns(K, v1, v2) -> PGL2Elem:
    return PGL2Elem.make(K, v1[0], v2[0], v1[1], v2[1])


@dataclass
class CyclicForm:
    sigma: PGL2Elem
    kind: str          # "diagonal" or "unipotent"
    form: PGL2Elem
    n: int


def cyclic_normal_form(M: PGL2Elem) -> CyclicForm:
    """sigma with M^sigma = diag(1, zeta) (p does not divide n) or [[1, 1], [0, 1]]."""
    K = M.ctx
    n = pgl2_order(M)
    I = PGL2Elem.identity(K)
    if n == 1:
        return CyclicForm(I, "diagonal", I, 1)
    eig = _eig(M)
    if not eig:
        raise FieldError(f"eigenvalues lie outside {K.spec()}; an extension of degree 2 is needed")
    if n % K.p:
        if len(eig) != 2:
            raise AssertionError("semisimple element with a repeated eigenvalue")
        vecs = [_kernel_vec(K, K.sub(M.a, lam), M.b, M.c, K.sub(M.d, lam)) for lam in eig]
        sigma = _from_columns(K, vecs[0], vecs[1])
        form = M.conj(sigma)
        kind = "diagonal"
        expected = PGL2Elem.diag(K, K.one, K.div(eig[1], eig[0]))
    else:
        lam = eig[0]
        N = (K.sub(M.a, lam), M.b, M.c, K.sub(M.d, lam))
        v2 = (K.one, K.zero) if (N[0] != 0 or N[2] != 0) else (K.zero, K.one)
        v1 = (K.add(K.mul(N[0], v2[0]), K.mul(N[1], v2[1])), K.add(K.mul(N[2], v2[0]), K.mul(N[3], v2[1])))
        sigma = _from_columns(K, v1, v2)
        form = M.conj(sigma)
        # form is [[1, c], [0, 1]]; rescale c to 1 with diag(1, 1/c)
        sigma = sigma * PGL2Elem.diag(K, K.one, K.inv(form.b))
        form = M.conj(sigma)
        kind = "unipotent"
        expected = PGL2Elem.make(K, K.one, K.one, K.zero, K.one)
    if form != expected:
        raise AssertionError("conjugation check failed")
    return CyclicForm(sigma, kind, form, n)


@dataclass
class DihedralForm:
    sigma: PGL2Elem
    case: str          # "a", "b" or "c"
    tau: PGL2Elem      # tau^sigma
    rho: PGL2Elem      # rho^sigma
    n: int


def dihedral_normal_form(tau: PGL2Elem, rho: PGL2Elem) -> DihedralForm:
    """Simultaneous normal form of an involution tau inverting rho (order n, 2n >= 4).

    Case a (p does not divide n): tau -> [[0, 1], [1, 0]], rho -> diag(1, zeta).
    Case b (n = p >= 3): tau -> diag(1, -1), rho -> [[1, 1], [0, 1]].
    Case c (n = p = 2): tau -> [[1, b], [0, 1]] with b != 1, rho -> [[1, 1], [0, 1]].
    """
    K = tau.ctx
    if tau.is_identity() or not (tau * tau).is_identity():
        raise ValueError("tau must be an involution")
    if rho.conj(tau) != rho.inverse():
        raise ValueError("tau does not invert rho; the pair is not dihedral")
    n = pgl2_order(rho)
    if n < 2 or (n == 2 and rho == tau):
        raise ValueError("the group must have order 2n >= 4")
    cyc = cyclic_normal_form(rho)
    s = cyc.sigma
    t = tau.conj(s)
    if cyc.kind == "diagonal":
        # t = [[0, 1], [c, 0]]; conjugate by diag(1, beta) with beta^2 = c
        if t.a != 0 or t.d != 0:
            raise AssertionError("expected an antidiagonal involution")
        beta = K.sqrt(t.c)
        if beta is None:
            raise FieldError(f"no square root of {K.to_str(t.c)} in {K.spec()}; an extension of degree 2 is needed")
        s = s * PGL2Elem.diag(K, K.one, beta)
        case = "a"
        want_tau = PGL2Elem.make(K, K.zero, K.one, K.one, K.zero)
    elif n == K.p and K.p != 2:
        # t = [[1, b], [0, -1]]; conjugate by [[1, -b/2], [0, 1]]
        b = t.b
        s = s * PGL2Elem.make(K, K.one, K.neg(K.div(b, K.from_int(2))), K.zero, K.one)
        case = "b"
        want_tau = PGL2Elem.diag(K, K.one, K.neg(K.one))
    elif n == K.p == 2:
        case = "c"
        want_tau = t
        if t.a != t.d or t.c != 0 or t.b in (0, K.one):
            raise AssertionError("expected [[1, b], [0, 1]] with b != 0, 1")
    else:
        raise AssertionError("unexpected order")
    tau_s, rho_s = tau.conj(s), rho.conj(s)
    if tau_s != want_tau or rho_s != cyc.form:
        raise AssertionError("conjugation check failed")
    return DihedralForm(s, case, tau_s, rho_s, n)


def odd_part(n: int) -> int:
    while n % 2 == 0:
        n //= 2
    return n


@dataclass
class SylowWitness:
    i: int
    group_order: int
    subgroup_order: int


def sylow2_witness(a: PGL2Elem, b: PGL2Elem) -> SylowWitness:
    """i such that a and b^(c^i) generate a Sylow 2-subgroup, c = ab.

    2i + 1 is the largest odd divisor of |<a, b>| = 2 ord(c); then
    a b^(c^i) = c^(2i+1), whose order is ord(c) / (2i + 1).
    """
    for x in (a, b):
        if x.is_identity() or not (x * x).is_identity():
            raise ValueError("a and b must be involutions")
    c = a * b
    n = pgl2_order(c)
    G = 2 * n
    m = odd_part(G)
    i = (m - 1) // 2
    w = a * b.conj(c ** i)
    if w != c ** (2 * i + 1):
        raise AssertionError("a b^(c^i) != c^(2i+1)")
    k = pgl2_order(w)
    if k != n // m:
        raise AssertionError("witness has the wrong order")
    sub = 2 * k
    if sub != G // m:
        raise AssertionError("subgroup is not a Sylow 2-subgroup")
    return SylowWitness(i, G, sub)


def dihedral_pair(ctx: FieldCtx, n: int) -> tuple[PGL2Elem, PGL2Elem]:
    """(tau, rho) = ([[0, 1], [1, 0]], diag(1, zeta)) with zeta of order n in ctx."""
    from .field import find_root_of_unity

    zeta = find_root_of_unity(ctx, n).v
    return PGL2Elem.make(ctx, ctx.zero, ctx.one, ctx.one, ctx.zero), PGL2Elem.diag(ctx, ctx.one, zeta)
