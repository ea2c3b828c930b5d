"""Exhaustive classifier/oracle agreement over small fields, in resumable chunks.

    python3 scripts/run_agreement.py --out results/agreement.json
    python3 scripts/run_agreement.py --field "GF(7)" --max-deg 3 --chunk 5000
"""
import argparse
import json
import pathlib
import time

from quadfact.config import load_config
from quadfact.oracle import exhaustive_agreement
from quadfact.parsing import parse_field

DEFAULT_RUNS = [("GF(2)", 1, 4), ("GF(3)", 1, 4), ("GF(5)", 3, 3)]


def run_one(field, lo, hi, config, chunk):
    ctx = parse_field(field)
    degs = range(lo, hi + 1)
    t0 = time.perf_counter()
    rep = exhaustive_agreement(ctx, degs, degs, config, max_pairs=chunk)
    while not rep.complete:
        rep = rep.merge(exhaustive_agreement(ctx, degs, degs, config, cursor=rep.cursor, max_pairs=chunk))
        print(f"  {field}: {rep.pairs_tested}/{rep.total_pairs}", flush=True)
    d = rep.to_dict()
    d["seconds"] = round(time.perf_counter() - t0, 2)
    return d


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--field")
    ap.add_argument("--min-deg", type=int, default=1)
    ap.add_argument("--max-deg", type=int, default=4)
    ap.add_argument("--chunk", type=int, default=None, help="pairs per slice")
    ap.add_argument("--config")
    ap.add_argument("--out", default="results/agreement.json")
    args = ap.parse_args()

    config = load_config(args.config)
    runs = [(args.field, args.min_deg, args.max_deg)] if args.field else DEFAULT_RUNS
    reports = []
    for field, lo, hi in runs:
        d = run_one(field, lo, hi, config, args.chunk)
        print(f"{field} deg {lo}..{hi}: {d['pairs_tested']} pairs, {d['pairs_with_factor']} with a factor, "
              f"{len(d['disagreements'])} disagreements, {d['seconds']}s")
        reports.append(d)
    out = pathlib.Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(json.dumps(reports, indent=2))
    print(f"wrote {out}")


if __name__ == "__main__":
    main()
