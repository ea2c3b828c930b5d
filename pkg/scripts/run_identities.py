"""Run the identity suite and write every result to JSON."""
import argparse
import collections
import json
import pathlib

from quadfact.oracle import IDENTITY_GROUPS, identity_suite
from quadfact.parsing import parse_field

ap = argparse.ArgumentParser(description=__doc__)
ap.add_argument("--fields", nargs="*", help="fields for the Dickson group, e.g. Q 'GF(7)' 'GF(3^2)'")
ap.add_argument("--groups", nargs="*", default=list(IDENTITY_GROUPS), choices=IDENTITY_GROUPS)
ap.add_argument("--max-n", type=int, default=16)
ap.add_argument("--out", default="results/identities.json")
args = ap.parse_args()

fields = [parse_field(s) for s in args.fields] if args.fields else None
results = identity_suite(fields, args.max_n, groups=tuple(args.groups))
tally = collections.Counter((r.identity, "skipped" if r.skipped else "ok" if r.ok else "FAILED") for r in results)
for (name, status), n in sorted(tally.items()):
    print(f"{name:28s} {status:8s} {n}")

out = pathlib.Path(args.out)
out.parent.mkdir(parents=True, exist_ok=True)
out.write_text(json.dumps([vars(r) for r in results], indent=2))
print(f"wrote {out}")
