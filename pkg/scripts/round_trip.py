"""Sample parameters for every constructible case, classify, and tally the outcomes.

The primary case may differ from the constructed tag when a smaller outer
component also explains the factors; the tally counts both.
"""
import argparse
import collections
import json
import pathlib
import time

from quadfact.classify import classify_pair, verify_certificate
from quadfact.parsing import parse_field
from quadfact.samples import CONSTRUCTIBLE, Sampler, applicable

ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
ap.add_argument("--fields", nargs="*", default=["GF(3)", "GF(5)", "GF(3^2)", "GF(2^2)", "Q"])
ap.add_argument("--per-tag", type=int, default=20)
ap.add_argument("--seed", type=int, default=0)
ap.add_argument("--out", default="results/round_trip.json")
args = ap.parse_args()

rows = []
for spec in args.fields:
    K = parse_field(spec)
    for tag in CONSTRUCTIBLE:
        if not applicable(tag, K):
            continue
        S = Sampler(K, seed=args.seed)
        cases = collections.Counter()
        failures = 0
        t0 = time.perf_counter()
        for _ in range(args.per_tag):
            _, f, g, _ = S.construct(tag)
            cert = classify_pair(f, g)
            ok = verify_certificate(cert, f, g)[0] and (cert.case == tag or tag in cert.matching_tags)
            failures += not ok
            cases[cert.case] += 1
        dt = time.perf_counter() - t0
        rows.append({"field": K.spec(), "tag": tag, "samples": args.per_tag,
                     "failures": failures, "primary_cases": dict(cases), "seconds": round(dt, 3)})
        print(f"{K.spec():8s} {tag:8s} failures={failures} primary={dict(cases)}")

out = pathlib.Path(args.out)
out.parent.mkdir(parents=True, exist_ok=True)
out.write_text(json.dumps(rows, indent=2))
print(f"wrote {out}")
