"""Exhaustive ground truth at desk scale.

The agreement run compares the classifier against :func:`quad_factors_exhaustive`
(which only uses ``difference_poly`` and ``divide_monic_in_x``).  The identity
suite expands every factorization identity used by the engine and compares it
exactly against the target polynomial.
"""

from __future__ import annotations

import itertools
import json
from fractions import Fraction
from dataclasses import asdict, dataclass, field

from .bipoly import (BiPoly, difference_poly, dickson_diff_factors,
                     dickson_sum_factors, discriminant_x, product, quad_factors_exhaustive,
                     remark_b4_factors, remark_b5_factors)
from .config import DEFAULT, BudgetExceeded, Config
from .families import CHAR2_QUARTIC, HALF_ADDITIVE, family_poly
from .field import GF, FieldCtx, FieldError, embed, is_prime, min_extension_for_unity, rationals
from .unipoly import UniPoly, compose, dickson

MONIC_NOTE = ("monic f and g only: scaling f and g by a common constant does not change "
              "the factors of f(X) - g(Y)")


def monic_polys(ctx: FieldCtx, d: int):
    elems = ctx.lex_elements()
    for tail in itertools.product(elems, repeat=d):
        yield UniPoly(ctx, tail + (ctx.one,))


def _poly_list(ctx, degs):
    return [f for d in degs for f in monic_polys(ctx, d)]


@dataclass
class AgreementReport:
    field: str
    deg_f: list
    deg_g: list
    pairs_tested: int = 0
    pairs_with_factor: int = 0
    by_case: dict = field(default_factory=dict)
    disagreements: list = field(default_factory=list)
    cursor: int = 0
    total_pairs: int = 0
    complete: bool = True
    note: str = MONIC_NOTE

    @property
    def passed(self) -> bool:
        return not self.disagreements

    def merge(self, other: "AgreementReport") -> "AgreementReport":
        """Combine reports over disjoint slices of the same enumeration."""
        if (self.field, self.deg_f, self.deg_g) != (other.field, other.deg_f, other.deg_g):
            raise ValueError("reports cover different enumerations")
        by_case = dict(self.by_case)
        for k, v in other.by_case.items():
            by_case[k] = by_case.get(k, 0) + v
        tested = self.pairs_tested + other.pairs_tested
        total = max(self.total_pairs, other.total_pairs)
        return AgreementReport(
            self.field, self.deg_f, self.deg_g, tested,
            self.pairs_with_factor + other.pairs_with_factor,
            dict(sorted(by_case.items())),
            self.disagreements + other.disagreements,
            max(self.cursor, other.cursor), total, tested >= total)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["passed"] = self.passed
        return d

    def to_json(self, indent=2) -> str:
        return json.dumps(self.to_dict(), indent=indent)


def exhaustive_agreement(ctx: FieldCtx, deg_f_range, deg_g_range, config: Config = DEFAULT,
                         cursor: int = 0, max_pairs: int | None = None) -> AgreementReport:
    """Compare the classifier with the exhaustive factor search on all monic pairs.

    Pairs are enumerated in a fixed order; ``cursor`` skips the first pairs and
    at most ``max_pairs`` (default ``config.max_pairs``) are processed, so an
    interrupted run can resume from ``report.cursor``.
    """
    from .classify import classify_pair

    if ctx.p == 0:
        raise BudgetExceeded("exhaustive agreement needs a finite field")
    if ctx.q > config.max_enum_field:
        raise BudgetExceeded(f"field size {ctx.q} exceeds max_enum_field={config.max_enum_field}")
    deg_f, deg_g = sorted(set(deg_f_range)), sorted(set(deg_g_range))
    if any(d < 1 for d in deg_f + deg_g):
        raise ValueError("degrees must be positive")
    fs, gs = _poly_list(ctx, deg_f), _poly_list(ctx, deg_g)
    total = len(fs) * len(gs)
    limit = config.max_pairs if max_pairs is None else max_pairs
    rep = AgreementReport(ctx.spec(), deg_f, deg_g, total_pairs=total, cursor=cursor)
    stop = min(total, cursor + limit)
    by_case: dict[str, int] = {}
    for idx in range(cursor, stop):
        f, g = fs[idx // len(gs)], gs[idx % len(gs)]
        oracle = quad_factors_exhaustive(difference_poly(f, g), config)
        cert = classify_pair(f, g, config, all_tags=False, fallback=False)
        by_case[cert.case] = by_case.get(cert.case, 0) + 1
        rep.pairs_tested += 1
        if oracle:
            rep.pairs_with_factor += 1
        oracle_keys = {q.coeffs for q in oracle}
        problems = []
        if bool(oracle) != cert.has_factor:
            problems.append("existence")
        missing = [str(q) for q in cert.factors if q.coeffs not in oracle_keys]
        if missing:
            problems.append("factor not found by search: " + ", ".join(missing))
        if cert.has_factor and not all(ok for _, ok in cert.checks):
            problems.append("certificate check failed")
        if problems:
            rep.disagreements.append({
                "f": str(f), "g": str(g), "oracle_factors": [str(q) for q in oracle],
                "engine_case": cert.case, "engine_factors": [str(q) for q in cert.factors],
                "problems": problems})
    rep.by_case = dict(sorted(by_case.items()))
    rep.cursor = stop
    rep.complete = stop >= total
    return rep


# --- identity suite -------------------------------------------------------------


@dataclass
class IdentityResult:
    identity: str
    params: str
    ok: bool
    skipped: bool = False


def _laurent_dickson_ok(ctx: FieldCtx, n: int, a) -> bool:
    """z^n D_n(z + a/z, a) = z^(2n) + a^n as polynomials in z."""
    D = dickson(n, a, ctx)
    num = UniPoly(ctx, [a, ctx.zero, ctx.one])          # z^2 + a
    z = UniPoly.x(ctx)
    lhs = UniPoly(ctx)
    for i, c in enumerate(D.coeffs):
        if c != 0:
            lhs = lhs + (num ** i * z ** (n - i)).scale(c)
    rhs = z ** (2 * n) + UniPoly(ctx, [ctx.pow(a, n)])
    return lhs == rhs


def _transformation_ok(ctx, n, a, b) -> bool:
    lhs = dickson(n, a, ctx).scale(ctx.pow(b, n))
    rhs = compose(dickson(n, ctx.mul(ctx.mul(b, b), a), ctx), UniPoly(ctx, [ctx.zero, b]))
    return lhs == rhs


def _composition_ok(ctx, m, n, a) -> bool:
    return compose(dickson(m, ctx.pow(a, n), ctx), dickson(n, a, ctx)) == dickson(m * n, a, ctx)


def _sample_elems(ctx: FieldCtx):
    if ctx.p == 0:
        return [Fraction(0), Fraction(1), Fraction(-2), Fraction(3, 5)]
    return ctx.lex_elements()


def _dickson_sum_ok(n: int, a, E: FieldCtx) -> bool:
    quads = dickson_sum_factors(n, a, E)
    D = dickson(n, a, E)
    target = BiPoly.from_x(D) + BiPoly.from_y(D)
    return len(quads) == n // 2 and product([q.to_bipoly() for q in quads], E) == target


def _dickson_diff_ok(n: int, a, E: FieldCtx) -> bool:
    D = dickson(n, a, E)
    return product(dickson_diff_factors(n, a, E), E) == difference_poly(D, D)


def _b5_ok(ctx: FieldCtx, a) -> bool:
    facs, irreducible = remark_b5_factors(a, ctx)
    h = family_poly(ctx, CHAR2_QUARTIC, 4, (a,))
    solvable = any(ctx.add(ctx.mul(z, z), z) == a for z in ctx.lex_elements())
    return product(facs, ctx) == difference_poly(h, h) and irreducible == (not solvable)


def _b4_ok(ctx: FieldCtx, a, config) -> bool:
    """Expansion plus disc_X = 16 t^2 Y for each quadratic factor."""
    p = ctx.p
    fs = remark_b4_factors(p, a, ctx, config)
    E = fs.ctx
    aE = embed(ctx, E)(a)
    h = family_poly(E, HALF_ADDITIVE, p, (aE,))
    if product(fs.factors, E) != difference_poly(h, h):
        return False
    # the t^2 are exactly the roots u of U^((p-1)/2) = a
    t2 = {E.key(E.mul(t, t)): E.mul(t, t) for t in _all_roots(E, aE, p - 1)}
    if t2 and len(t2) != (p - 1) // 2:
        return False
    sixteen = E.from_int(16)
    seen = set()
    for q in fs.factors[1:]:
        disc = discriminant_x(q)
        if disc.degree != 1 or disc.coeffs[0] != 0:
            return False
        u = E.div(disc.coeffs[1], sixteen)
        if E.pow(u, (p - 1) // 2) != aE or (t2 and E.key(u) not in t2):
            return False
        seen.add(E.key(u))
    return len(seen) == (p - 1) // 2 == len(fs.factors) - 1


def _all_roots(E: FieldCtx, a, n: int):
    try:
        return E.nth_roots(a, n)
    except FieldError:
        return []


def _conjugation_ok(n: int) -> bool:
    from .pgl2 import dihedral_pair, sylow2_witness

    K = GF(_prime_with_unity(n))
    tau, rho = dihedral_pair(K, n)
    a, b = tau, tau * rho
    c = a * b
    ok = all((a * b.conj(c ** i)) == c ** (2 * i + 1) for i in range(0, n + 1))
    w = sylow2_witness(a, b)
    return ok and w.group_order == 2 * n


def _prime_with_unity(n: int) -> int:
    p = n + 1
    while not (is_prime(p) and (p - 1) % n == 0):
        p += 1
    return p


IDENTITY_GROUPS = ("dickson", "sum", "remarks", "difference", "conjugation", "mutation")


def default_identity_fields():
    return [rationals(), GF(7), GF(3, 2)]


def identity_suite(fields=None, max_n: int = 16, config: Config = DEFAULT,
                   groups=IDENTITY_GROUPS) -> list[IdentityResult]:
    """Expand the Dickson, sum/difference, remark and conjugation identities exactly.

    ``fields`` only drives the Dickson definition/transformation group; the
    other groups run over the fields their identities live in.
    """
    fields = default_identity_fields() if fields is None else list(fields)
    out: list[IdentityResult] = []

    def rec(name, params, fn):
        try:
            ok = bool(fn())
        except BudgetExceeded as exc:
            out.append(IdentityResult(name, f"{params}; skipped: {exc}", True, skipped=True))
        except (ArithmeticError, ValueError, AssertionError) as exc:
            out.append(IdentityResult(name, f"{params}; {type(exc).__name__}: {exc}", False))
        else:
            out.append(IdentityResult(name, params, ok))

    if "dickson" in groups:
        for ctx in fields:
            sp = ctx.spec()
            elems = _sample_elems(ctx)
            for n in range(0, max_n + 1):
                for a in elems:
                    rec("dickson-definition", f"{sp} n={n} a={ctx.to_str(a)}",
                        lambda: _laurent_dickson_ok(ctx, n, a))
            bs = [b for b in elems if b != 0][:4]
            for n in range(0, min(max_n, 12) + 1):
                for a in elems:
                    for b in bs:
                        rec("dickson-transformation", f"{sp} n={n} a={ctx.to_str(a)} b={ctx.to_str(b)}",
                            lambda: _transformation_ok(ctx, n, a, b))
            for m, n in ((2, 3), (3, 2), (2, 2), (3, 3)):
                for a in elems[:3]:
                    rec("dickson-composition", f"{sp} m={m} n={n} a={ctx.to_str(a)}",
                        lambda: _composition_ok(ctx, m, n, a))
    if "sum" in groups:
        for p in (3, 5, 7, 13):
            for n in (2, 4, 6, 8):
                if (2 * n) % p == 0:
                    continue
                k = min_extension_for_unity(p, 2 * n)
                if p ** k > config.max_field_size:
                    continue
                E = GF(p, k)
                for a in range(p):
                    rec("dickson-sum-product", f"{E.spec()} n={n} a={a}",
                        lambda: _dickson_sum_ok(n, E.from_int(a), E))
    if "difference" in groups:
        for p in (2, 3, 5, 7):
            for n in range(2, 9):
                if n % p == 0:
                    continue
                k = min_extension_for_unity(p, n)
                if p ** k > config.max_field_size:
                    continue
                E = GF(p, k)
                for a in range(p):
                    rec("dickson-difference-product", f"{E.spec()} n={n} a={a}",
                        lambda: _dickson_diff_ok(n, E.from_int(a), E))
    if "remarks" in groups:
        for k in (1, 2, 3):
            K = GF(2, k)
            for a in K.lex_elements():
                rec("remark-b5", f"{K.spec()} a={K.to_str(a)}", lambda: _b5_ok(K, a))
        for p in (3, 5, 7):
            K = GF(p)
            for a in K.lex_elements()[1:]:
                rec("remark-b4", f"{K.spec()} a={K.to_str(a)}", lambda: _b4_ok(K, a, config))
    if "conjugation" in groups:
        for n in range(2, min(max_n, 20) + 1):
            rec("conjugation-identity", f"D_{n}", lambda: _conjugation_ok(n))
    if "mutation" in groups:
        # harness self-check: a perturbed identity has to be reported as failing
        K = GF(7)

        def perturbed_rejected():
            D = dickson(3, K.one, K) + UniPoly(K, [K.one])
            return product(dickson_diff_factors(3, K.one, K), K) != BiPoly.from_x(D) - BiPoly.from_y(dickson(3, K.one, K))

        rec("mutation-self-check", "D_3(X) + 1 - D_3(Y) against the difference product", perturbed_rejected)
    return out
