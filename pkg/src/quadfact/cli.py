"""Command line entry point.

Exit codes: 0 ok, 2 parse error, 3 constraint violation, 4 budget exceeded,
5 disagreement (oracle run or identity suite).
"""

from __future__ import annotations

import argparse
import json
import sys

from .config import BudgetExceeded, Config, load_config
from .field import FieldCtx, FieldError
from .parsing import PolySyntaxError, format_poly, parse_elem, parse_field, parse_poly

EXIT_OK, EXIT_PARSE, EXIT_CONSTRAINT, EXIT_BUDGET, EXIT_DISAGREE = 0, 2, 3, 4, 5

POLY_PARAMS = ("phi", "f1", "g1", "f0")
INT_PARAMS = ("n",)


class ParseFailure(Exception):
    pass


def _field(text: str) -> FieldCtx:
    try:
        return parse_field(text)
    except (FieldError, ValueError) as exc:
        raise ParseFailure(f"field {text!r}: {exc}") from None


def _poly(text: str, ctx: FieldCtx):
    try:
        return parse_poly(text, ctx)
    except (PolySyntaxError, FieldError, ValueError, ZeroDivisionError) as exc:
        raise ParseFailure(f"polynomial {text!r}: {exc}") from None


def _elem(text: str, ctx: FieldCtx):
    try:
        return parse_elem(text, ctx)
    except (PolySyntaxError, FieldError, ValueError, ZeroDivisionError) as exc:
        raise ParseFailure(f"element {text!r}: {exc}") from None


def _emit(args, payload: dict, text: str):
    if args.json:
        print(json.dumps(payload, indent=2))
    else:
        print(text)


def _config(args) -> Config:
    overrides = {k: getattr(args, k) for k in ("max_enum_field", "max_field_size",
                                                "max_wild_candidates", "max_pairs")}
    try:
        return load_config(args.config, **overrides)
    except (OSError, ValueError) as exc:
        raise ParseFailure(f"config: {exc}") from None


# --- subcommands --------------------------------------------------------------


def cmd_dickson(args, config) -> int:
    from .unipoly import dickson

    ctx = _field(args.field)
    if args.n < 0:
        raise ParseFailure("n must be nonnegative")
    a = _elem(args.a, ctx)
    D = dickson(args.n, a, ctx)
    payload = {"field": ctx.spec(), "n": args.n, "a": ctx.to_str(a), "dickson": format_poly(D)}
    _emit(args, payload, format_poly(D))
    return EXIT_OK


def cmd_factor(args, config) -> int:
    from .bipoly import difference_poly, quad_factors_exhaustive, quad_factors_rational

    ctx = _field(args.field)
    f, g = _poly(args.f, ctx), _poly(args.g, ctx)
    if f.degree < 1 or g.degree < 1:
        raise ParseFailure("f and g must be nonconstant")
    # dividing f and g by lc(f) leaves the factors unchanged and makes F monic in X
    F = difference_poly(f.monic(), g.scale(ctx.inv(f.lc)))
    if ctx.p:
        facs = quad_factors_exhaustive(F, config)
        method = "exhaustive"
    else:
        facs = quad_factors_rational(F)
        method = "sympy"
    payload = {"field": ctx.spec(), "f": format_poly(f), "g": format_poly(g),
               "method": method, "factors": [str(q) for q in facs]}
    text = "\n".join(str(q) for q in facs) if facs else "(no factor of degree <= 2)"
    _emit(args, payload, text)
    return EXIT_OK


def cmd_classify(args, config) -> int:
    from .classify import classify_pair

    ctx = _field(args.field)
    f, g = _poly(args.f, ctx), _poly(args.g, ctx)
    if f.degree < 1 or g.degree < 1:
        raise ParseFailure("f and g must be nonconstant")
    cert = classify_pair(f, g, config, fallback=not args.no_fallback)
    d = cert.to_dict()
    lines = [f"case: {d['case']}", f"field: {d['field']}",
             f"phi: {d['phi']}", f"f1: {d['f1']}", f"g1: {d['g1']}"]
    lines += [f"param {k}: {v}" for k, v in d["params"].items()]
    lines += [f"factor: {q}" for q in d["factors"]]
    lines += [f"frobenius step: {s}" for s in d["transcript"]]
    lines += [f"check {c['name']}: {'ok' if c['ok'] else 'FAILED'}" for c in d["checks"]]
    lines.append("matching tags: " + (", ".join(d["matching_tags"]) or "-"))
    _emit(args, d, "\n".join(lines))
    return EXIT_OK if all(c["ok"] for c in d["checks"]) else EXIT_DISAGREE


def _construct_params(items, ctx):
    params = {}
    for item in items:
        key, sep, value = item.partition("=")
        if not sep or not key:
            raise ParseFailure(f"parameter {item!r} is not key=value")
        if key in POLY_PARAMS:
            params[key] = _poly(value, ctx)
        elif key in INT_PARAMS:
            try:
                params[key] = int(value)
            except ValueError:
                raise ParseFailure(f"parameter {key} must be an integer") from None
        elif key == "inner":
            params[key] = value
        else:
            params[key] = ctx.elem(_elem(value, ctx))
    return params


def cmd_construct(args, config) -> int:
    from .classify import ConstraintError, classify_pair, construct_case

    items = list(args.params)
    pvals = [it.split("=", 1)[1] for it in items if it.startswith("p=")]
    items = [it for it in items if not it.startswith("p=")]
    if args.field:
        ctx = _field(args.field)
        if pvals and str(ctx.p) != pvals[-1]:
            raise ConstraintError(f"p={pvals[-1]} disagrees with the field {ctx.spec()}")
    elif pvals:
        ctx = _field("Q" if pvals[-1] == "0" else f"GF({pvals[-1]})")
    else:
        raise ParseFailure("construct needs --field or p=<prime>")
    params = _construct_params(items, ctx)
    f, g, facs = construct_case(args.tag, params, ctx)
    cert = classify_pair(f, g, config)
    ok = all(v for _, v in cert.checks)
    compatible = cert.case == args.tag or args.tag in cert.matching_tags
    payload = {"tag": args.tag, "field": ctx.spec(), "f": format_poly(f), "g": format_poly(g),
               "factors": [str(q) for q in facs], "classified_case": cert.case,
               "matching_tags": cert.matching_tags, "certificate_ok": ok, "compatible": compatible}
    lines = [f"f = {payload['f']}", f"g = {payload['g']}"]
    lines += [f"factor: {q}" for q in payload["factors"]]
    lines.append(f"classified as {cert.case} (certificate {'ok' if ok else 'FAILED'})")
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK if ok and compatible else EXIT_DISAGREE


def cmd_decompose(args, config) -> int:
    from .decompose import common_decompositions, decompositions

    ctx = _field(args.field)
    f = _poly(args.f, ctx)
    if f.degree < 1:
        raise ParseFailure("f must be nonconstant")
    if args.g is None:
        decs = [{"phi": format_poly(phi), "f1": format_poly(f1)} for phi, f1 in decompositions(f, config)]
    else:
        g = _poly(args.g, ctx)
        decs = [{"phi": format_poly(d.phi), "f1": format_poly(d.f1), "g1": format_poly(d.g1)}
                for d in common_decompositions(f, g, config)]
    payload = {"field": ctx.spec(), "decompositions": decs}
    text = "\n".join(" | ".join(f"{k} = {v}" for k, v in d.items()) for d in decs)
    _emit(args, payload, text)
    return EXIT_OK


def _matrix(text: str, ctx):
    from .pgl2 import PGL2Elem

    parts = text.split(",")
    if len(parts) != 4:
        raise ParseFailure(f"matrix {text!r} needs four comma-separated entries a,b,c,d")
    vals = [_elem(s, ctx) for s in parts]
    try:
        return PGL2Elem.make(ctx, *vals)
    except FieldError as exc:
        raise ParseFailure(f"matrix {text!r}: {exc}") from None


def cmd_pgl2(args, config) -> int:
    from .pgl2 import cyclic_normal_form, dihedral_normal_form

    ctx = _field(args.field)
    if ctx.p == 0:
        raise ParseFailure("pgl2-normal-form needs a finite field")
    M = _matrix(args.matrix, ctx)
    if args.tau is None:
        nf = cyclic_normal_form(M)
        payload = {"field": ctx.spec(), "order": nf.n, "kind": nf.kind,
                   "sigma": str(nf.sigma), "form": str(nf.form)}
    else:
        nf = dihedral_normal_form(_matrix(args.tau, ctx), M)
        payload = {"field": ctx.spec(), "order": nf.n, "case": nf.case, "sigma": str(nf.sigma),
                   "tau": str(nf.tau), "rho": str(nf.rho)}
    _emit(args, payload, "\n".join(f"{k}: {v}" for k, v in payload.items()))
    return EXIT_OK


def cmd_verify(args, config) -> int:
    from .oracle import exhaustive_agreement

    ctx = _field(args.field)
    lo = args.min_deg
    rep = exhaustive_agreement(ctx, range(lo, args.max_deg + 1), range(lo, args.max_deg + 1),
                               config, cursor=args.cursor)
    d = rep.to_dict()
    text = (f"{d['field']}: {d['pairs_tested']} pairs, {d['pairs_with_factor']} with a factor, "
            f"{len(d['disagreements'])} disagreements"
            + ("" if rep.complete else f" (partial, resume with --cursor {rep.cursor})"))
    _emit(args, d, text)
    if not rep.passed:
        return EXIT_DISAGREE
    return EXIT_OK if rep.complete else EXIT_BUDGET


def cmd_identity(args, config) -> int:
    from .oracle import identity_suite

    fields = [_field(s) for s in args.fields] if args.fields else None
    results = identity_suite(fields, args.max_n, config)
    bad = [r for r in results if not r.ok]
    payload = {"total": len(results), "failed": len(bad),
               "skipped": sum(r.skipped for r in results),
               "results": [vars(r) for r in results]}
    text = f"{len(results)} identities checked, {len(bad)} failed"
    if bad:
        text += "\n" + "\n".join(f"FAILED {r.identity}: {r.params}" for r in bad)
    _emit(args, payload, text)
    return EXIT_DISAGREE if bad else EXIT_OK


# --- parser -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit JSON")
    common.add_argument("--config", help="JSON file with budget keys")
    for name in ("max-enum-field", "max-field-size", "max-wild-candidates", "max-pairs"):
        common.add_argument(f"--{name}", type=int, default=None)

    ap = argparse.ArgumentParser(prog="quadfact",
                                 description="Degree <= 2 factors of f(X) - g(Y).")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("dickson", parents=[common], help="print D_n(x, a)")
    p.add_argument("n", type=int)
    p.add_argument("a", nargs="?", default="1")
    p.add_argument("--field", default="Q")
    p.set_defaults(func=cmd_dickson)

    p = sub.add_parser("factor", parents=[common], help="all factors of degree <= 2 by direct search")
    p.add_argument("f")
    p.add_argument("g")
    p.add_argument("--field", required=True)
    p.set_defaults(func=cmd_factor)

    p = sub.add_parser("classify", parents=[common], help="classify and certify (f, g)")
    p.add_argument("f")
    p.add_argument("g")
    p.add_argument("--field", required=True)
    p.add_argument("--no-fallback", action="store_true", help="skip the direct factor search")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("construct", parents=[common], help="build a pair of the given case")
    p.add_argument("tag")
    p.add_argument("params", nargs="*", help="key=value, e.g. n=3 a=1 f1=x^2")
    p.add_argument("--field")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("decompose", parents=[common], help="decompositions of f, or common ones of f and g")
    p.add_argument("f")
    p.add_argument("g", nargs="?")
    p.add_argument("--field", required=True)
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("pgl2-normal-form", parents=[common], help="normal form of a finite-order element")
    p.add_argument("matrix", help="a,b,c,d")
    p.add_argument("--tau", help="involution a,b,c,d for the dihedral normal form")
    p.add_argument("--field", required=True)
    p.set_defaults(func=cmd_pgl2)

    p = sub.add_parser("verify-theorems", parents=[common], help="exhaustive agreement run")
    p.add_argument("--field", required=True)
    p.add_argument("--max-deg", type=int, default=3)
    p.add_argument("--min-deg", type=int, default=1)
    p.add_argument("--cursor", type=int, default=0)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("identity-suite", parents=[common], help="expand every factorization identity")
    p.add_argument("--fields", nargs="*", help="fields for the Dickson identities")
    p.add_argument("--max-n", type=int, default=16)
    p.set_defaults(func=cmd_identity)
    return ap


def main(argv=None) -> int:
    from .classify import ConstraintError

    ap = build_parser()
    args, extra = ap.parse_known_args(argv)
    # construct parameters may follow the options
    if extra and args.command == "construct" and all("=" in e and not e.startswith("-") for e in extra):
        args.params = list(args.params) + extra
    elif extra:
        ap.error(f"unrecognized arguments: {' '.join(extra)}")
    try:
        config = _config(args)
        code = args.func(args, config)
    except ParseFailure as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (ConstraintError, FieldError, ValueError) as exc:
        print(f"constraint violated: {exc}", file=sys.stderr)
        return EXIT_CONSTRAINT
    return code


if __name__ == "__main__":
    sys.exit(main())
