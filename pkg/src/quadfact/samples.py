"""Random parameter sets for :func:`construct_case`, used by the round-trip
tests and the experiment scripts."""

from __future__ import annotations

import random
from fractions import Fraction

from .classify import ConstraintError, construct_case, unity_trace_in_field
from .field import FieldCtx
from .unipoly import UniPoly

CONSTRUCTIBLE = ("T1a", "T1b", "T2a", "T2b-i", "T2b-ii", "T2b-iii", "T2b-iv", "T2b-v",
                 "T2c", "T2d", "T3a", "T3b")


def applicable(tag: str, ctx: FieldCtx) -> bool:
    p = ctx.p
    if tag in ("T2b-ii", "T2b-iii", "T2b-iv", "T2d"):
        return p >= 3
    if tag in ("T2b-v", "T3b"):
        return p == 2
    if tag == "T3a":
        return p > 0
    if tag == "T1b":
        return p != 2 and unity_trace_in_field(ctx, 4)
    if tag == "T2c":
        return p != 2
    return True


class Sampler:
    def __init__(self, ctx: FieldCtx, seed: int = 0):
        self.ctx = ctx
        self.rng = random.Random(seed)
        self.elems = ctx.lex_elements() if ctx.p else None

    def elem(self, nonzero=False):
        K = self.ctx
        while True:
            if K.p:
                v = self.rng.choice(self.elems)
            else:
                v = Fraction(self.rng.randint(-4, 4), self.rng.randint(1, 3))
            if v != 0 or not nonzero:
                return K.elem(v)

    def poly(self, lo: int, hi: int, monic=False) -> UniPoly:
        K = self.ctx
        d = self.rng.randint(lo, hi)
        coeffs = [self.elem().v for _ in range(d)]
        lead = K.one if monic else self.elem(nonzero=True).v
        return UniPoly(K, coeffs + [lead])

    def linear_frame(self) -> dict:
        return {"alpha": self.elem(True), "beta": self.elem(),
                "gamma": self.elem(True), "delta": self.elem()}

    def params(self, tag: str) -> dict:
        K, r = self.ctx, self.rng
        p = K.p
        prm = {}
        if r.random() < 0.5:
            prm["phi"] = self.poly(1, 2)
        if tag == "T1a":
            prm.update(alpha=self.elem(True), beta=self.elem())
        elif tag == "T2a":
            if r.random() < 0.5:
                prm.update(f1=self.poly(2, 2), g1=self.poly(1, 2))
            else:
                prm.update(f1=self.poly(1, 2), g1=self.poly(2, 2))
        elif tag == "T2b-i":
            ns = [n for n in range(2, 7) if p == 0 or n % p]
            n = r.choice(ns)
            a = self.elem() if unity_trace_in_field(K, n) else K.elem(K.zero)
            prm.update(self.linear_frame(), n=n, a=a)
        elif tag in ("T2b-ii", "T2b-iv", "T2b-v"):
            prm.update(self.linear_frame(), a=self.elem(nonzero=tag == "T2b-iv"))
        elif tag == "T2b-iii":
            prm.update(self.linear_frame(), a=self.elem(), b=self.elem())
        elif tag in ("T2c", "T1b"):
            if tag == "T1b":
                n = 4
            else:
                ns = [n for n in (2, 4, 6) if (p == 0 or n % p) and unity_trace_in_field(K, n)]
                n = r.choice(ns)
            prm.update(n=n, a=self.elem(), s=self.elem(True), beta=self.elem(), delta=self.elem())
        elif tag == "T2d":
            prm.update(a=self.elem(True), gamma1=self.elem(True), delta1=self.elem(),
                       gamma2=self.elem(True), delta2=self.elem())
        elif tag == "T3a":
            inner = r.choice(["T1a", "T2a", "T2b-i"])
            prm = self.params(inner)
            prm["inner"] = inner
        elif tag == "T3b":
            prm.update(f0=self.poly(1, 3), a=self.elem(True), b=self.elem())
        return prm

    def construct(self, tag: str, tries: int = 200):
        """(params, f, g, factors) for the first sampled parameters meeting the constraints."""
        last = None
        for _ in range(tries):
            prm = self.params(tag)
            try:
                f, g, facs = construct_case(tag, prm, self.ctx)
            except ConstraintError as exc:
                last = exc
                continue
            return prm, f, g, facs
        raise ConstraintError(f"no admissible parameters for {tag} over {self.ctx.spec()} "
                              f"in {tries} tries (last: {last})")
