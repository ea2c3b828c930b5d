"""Acceptance suite: nine exact checks with wall-clock limits.

Each test prints one PASS/FAIL line (shown even without ``-s``).  Run alone with
``pytest tests/test_acceptance.py -v``.
"""
import contextlib
import io
import json
import pathlib
import random
import time
import zlib

import pytest

from quadfact.bipoly import BiPoly, difference_poly, divides
from quadfact.classify import classify_pair, reduce_frobenius, undo_frobenius, verify_certificate
from quadfact.cli import main
from quadfact.decompose import common_left_component, left_component, right_component
from quadfact.field import GF, FieldError, is_prime, rationals
from quadfact.oracle import exhaustive_agreement, identity_suite
from quadfact.pgl2 import (PGL2Elem, cyclic_normal_form, dihedral_normal_form, dihedral_pair,
                           pgl2_order, sylow2_witness)
from quadfact.samples import CONSTRUCTIBLE, Sampler, applicable
from quadfact.unipoly import UniPoly, compose

Q = rationals()
F2, F3, F4, F5, F7, F9, F13 = GF(2), GF(3), GF(2, 2), GF(5), GF(7), GF(3, 2), GF(13)
GOLDEN = pathlib.Path(__file__).parent / "golden"


@pytest.fixture
def run_criterion(capsys):
    """Time ``fn``; it returns (ok, detail).  Print one line, then assert."""
    def run(label, limit, fn):
        t0 = time.perf_counter()
        ok, detail = fn()
        dt = time.perf_counter() - t0
        fast = dt < limit
        status = "PASS" if ok and fast else "FAIL"
        with capsys.disabled():
            print(f"\n[{status}] {label}: {detail} ({dt:.2f}s, limit {limit}s)")
        assert ok, detail
        assert fast, f"{label} took {dt:.2f}s (limit {limit}s)"
    return run


def _suite(groups, **kw):
    res = identity_suite(groups=groups, **kw)
    bad = [r for r in res if not r.ok]
    skipped = [r for r in res if r.skipped]
    detail = f"{len(res)} identities, {len(bad)} failed, {len(skipped)} skipped"
    if bad:
        detail += "; first failure: " + f"{bad[0].identity} {bad[0].params}"
    return not bad and not skipped and len(res) > 0, detail


def test_c1_dickson_identities(run_criterion):
    run_criterion("C1 Dickson definition and transformation", 5,
                  lambda: _suite(("dickson",), fields=[Q, F7, F9], max_n=16))


def test_c2_dickson_sum_product(run_criterion):
    def go():
        res = identity_suite(groups=("sum",))
        bad = [r for r in res if not r.ok or r.skipped]
        # n = 2 over F_9 carries the sign correction
        n2 = [r for r in res if r.params.startswith("GF(3^2) n=2")]
        return not bad and len(n2) == 3, f"{len(res)} products, {len(bad)} bad, n=2 over F_9: {len(n2)}"
    run_criterion("C2 Dickson sum factorization", 5, go)


def test_c3_remark_identities(run_criterion):
    def go():
        res = identity_suite(groups=("remarks",))
        bad = [r for r in res if not r.ok or r.skipped]
        b5 = sum(r.identity == "remark-b5" for r in res)
        b4 = sum(r.identity == "remark-b4" for r in res)
        # every a over F_2, F_4, F_8 and every a != 0 for p = 3, 5, 7
        ok = not bad and b5 == 2 + 4 + 8 and b4 == 2 + 4 + 6
        return ok, f"b5: {b5}, b4: {b4}, bad: {len(bad)}"
    run_criterion("C3 characteristic-2 quartic and half-additive remarks", 10, go)


def test_c4_oracle_agreement(run_criterion):
    def go():
        reports = [
            exhaustive_agreement(F2, range(1, 5), range(1, 5)),
            exhaustive_agreement(F3, range(1, 5), range(1, 5)),
            exhaustive_agreement(F5, [3], [3]),
        ]
        total = sum(r.pairs_tested for r in reports)
        dis = sum(len(r.disagreements) for r in reports)
        ok = dis == 0 and all(r.complete and r.passed for r in reports)
        return ok, f"{total} monic pairs, {dis} disagreements"
    run_criterion("C4 classifier against exhaustive factor search", 60, go)


def _random_poly(K, rng, lo, hi, elems, monic=False):
    d = rng.randint(lo, hi)
    lead = K.one if monic else rng.choice([e for e in elems if e != 0])
    return UniPoly(K, [rng.choice(elems) for _ in range(d)] + [lead])


def test_c5_frobenius_paths(run_criterion):
    def go():
        rng = random.Random(2024)
        checked = 0
        for K in (F2, F4):
            elems = K.lex_elements()
            x2 = UniPoly(K, [K.zero, K.zero, K.one])
            for _ in range(200):
                f0 = _random_poly(K, rng, 1, 4, elems)
                f = compose(f0, x2)
                for a in elems[1:]:
                    for b in elems:
                        g = compose(f0, UniPoly(K, [b, K.zero, a]))
                        F = difference_poly(f, g)
                        q = BiPoly.from_terms(K, {(2, 0): K.one, (0, 2): K.neg(a), (0, 0): K.neg(b)})
                        if not divides(q, F):
                            return False, f"X^2 - aY^2 - b does not divide for f0={f0} a={a} b={b}"
                        fr, gr, steps = reduce_frobenius(f, g)
                        if not steps or undo_frobenius(fr, gr, steps) != (f, g):
                            return False, f"transcript does not undo for f0={f0}"
                        w = steps[0].t3b_factor()
                        if w is None or not divides(w, F):
                            return False, f"no quadratic witness recorded for f0={f0}"
                        checked += 1
        return True, f"{checked} (f0, a, b) triples"
    run_criterion("C5 Frobenius reduction paths in characteristic 2", 5, go)


def test_c6_construct_classify_round_trip(run_criterion):
    def go():
        n = 0
        for K in (F3, F5, F9, F4, Q):
            for tag in CONSTRUCTIBLE:
                if not applicable(tag, K):
                    continue
                S = Sampler(K, seed=zlib.crc32(f"{tag} {K.spec()}".encode()))
                for _ in range(20):
                    prm, f, g, facs = S.construct(tag)
                    cert = classify_pair(f, g)
                    if not cert.has_factor:
                        return False, f"{tag} over {K.spec()}: no factor for f={f} g={g}"
                    if cert.case != tag and tag not in cert.matching_tags:
                        return False, f"{tag} over {K.spec()} classified as {cert.case}"
                    ok, checks = verify_certificate(cert, f, g)
                    if not ok:
                        return False, f"{tag} over {K.spec()}: failed checks {checks}"
                    n += 1
        return True, f"{n} round trips"
    run_criterion("C6 construct/classify round trip", 30, go)


def _involutions(K):
    els = K.lex_elements()
    out = set()
    for a in els:
        for b in els:
            for c in els:
                for d in els:
                    if K.sub(K.mul(a, d), K.mul(b, c)) == 0:
                        continue
                    M = PGL2Elem.make(K, a, b, c, d)
                    if not M.is_identity() and (M * M).is_identity():
                        out.add(M)
    return sorted(out, key=lambda M: tuple(K.key(x) for x in M.entries))


def test_c7_pgl2(run_criterion):
    def go():
        # Sylow-2 witness for D_n, n <= 20, in a field holding n-th roots of unity
        for n in range(2, 21):
            p = next(p for p in range(3, 200) if is_prime(p) and (p - 1) % n == 0)
            tau, rho = dihedral_pair(GF(p), n)
            a, b = tau, rho * tau
            c = a * b
            w = sylow2_witness(a, b)
            if a * b.conj(c ** w.i) != c ** (2 * w.i + 1) or w.group_order != 2 * n:
                return False, f"Sylow witness wrong for n={n}"
        rng = random.Random(7)
        cyc = dih = 0
        for K in (F5, F9):
            els = K.lex_elements()
            invs = _involutions(K)
            done_c = done_d = 0
            while done_c < 50 or done_d < 50:
                a, b, c, d = (rng.choice(els) for _ in range(4))
                if K.sub(K.mul(a, d), K.mul(b, c)) == 0:
                    continue
                rho = PGL2Elem.make(K, a, b, c, d)
                try:
                    nf = cyclic_normal_form(rho)
                except FieldError:
                    continue
                if rho.conj(nf.sigma) != nf.form or pgl2_order(nf.form) != nf.n:
                    return False, f"cyclic form fails for {rho}"
                done_c += 1
                if nf.n < 2 or done_d >= 50:
                    continue
                for tau in rng.sample(invs, len(invs)):
                    if rho.conj(tau) != rho.inverse() or (nf.n == 2 and tau == rho):
                        continue
                    try:
                        df = dihedral_normal_form(tau, rho)
                    except FieldError:
                        break
                    if tau.conj(df.sigma) != df.tau or rho.conj(df.sigma) != df.rho:
                        return False, f"dihedral form fails for {tau}, {rho}"
                    done_d += 1
                    break
            cyc += done_c
            dih += done_d
        return True, f"Sylow witnesses n=2..20, {cyc} cyclic and {dih} dihedral normal forms"
    run_criterion("C7 PGL2 normal forms and Sylow witness", 5, go)


def test_c8_tame_decomposition(run_criterion):
    def go():
        rng = random.Random(99)
        n = 0
        for K in (F5, Q):
            els = K.lex_elements() if K.p else [Q.coerce(v) for v in (-3, -2, -1, 0, 1, 2, 3, 5)]
            degs = [d for d in range(1, 6) if K.p == 0 or d % K.p]
            for _ in range(100):
                phi = _random_poly(K, rng, 1, 5, els)
                f1, g1 = (_random_poly(K, rng, 1, 5, els) for _ in range(2))
                while phi.degree not in degs:
                    phi = _random_poly(K, rng, 1, 5, els)
                while f1.degree not in degs:
                    f1 = _random_poly(K, rng, 1, 5, els)
                g1 = _random_poly(K, rng, f1.degree, f1.degree, els)
                f, g = compose(phi, f1), compose(phi, g1)
                R = right_component(f, f1.degree)
                L = left_component(f, R) if R is not None else None
                if L is None or compose(L, R) != f:
                    return False, f"right/left component fails for phi={phi} f1={f1}"
                dec = common_left_component(f, g)
                if compose(dec.phi, dec.f1) != f or compose(dec.phi, dec.g1) != g:
                    return False, f"common left component fails for phi={phi} f1={f1} g1={g1}"
                if dec.phi.degree < phi.degree:
                    return False, f"common left component too small for phi={phi}"
                n += 1
        return True, f"{n} tame (phi, f1, g1) triples"
    run_criterion("C8 tame decomposition recovery", 5, go)


def test_c9_cli_golden(run_criterion):
    def go():
        cases = json.loads((GOLDEN / "cases.json").read_text())
        for case in cases:
            argv = case["argv"]
            buf = io.StringIO()
            with contextlib.redirect_stdout(buf):
                code = main(argv[:1] + ["--json"] + argv[1:])
            want = (GOLDEN / f"{case['name']}.json").read_text()
            if code != 0 or buf.getvalue() != want:
                return False, f"{case['name']} differs (exit {code})"
        return len(cases) == 12, f"{len(cases)} golden files byte-identical"
    run_criterion("C9 CLI golden files", 2, go)
