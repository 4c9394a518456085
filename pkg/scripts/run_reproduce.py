#!/usr/bin/env python3
"""Run every pinned reproduction pipeline and print a status table.

Equivalent to `edgemaps reproduce` with no ids; kept as a script so a fresh
checkout can sanity-check itself with one command.
"""
import argparse
import sys

from edgemaps.reproduce import MANIFEST, RunContext, run_manifest


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--budget", type=float, default=None, help="seconds per search")
    ap.add_argument("--seed", type=int, default=RunContext().seed)
    ap.add_argument("ids", nargs="*", default=list(MANIFEST))
    args = ap.parse_args()

    ctx = RunContext(seed=args.seed, budget=args.budget)
    worst = "PASS"
    for mid in args.ids or list(MANIFEST):
        rec = run_manifest(mid, ctx)
        print(f"{rec.status:7s} {mid:24s} {rec.wall_time:7.2f}s  digest {rec.digest()[:16]}")
        for c in rec.claims:
            if c.status != "PASS":
                print(f"        {c.status}: {c.claim} ({c.detail})")
        if rec.status == "FAIL":
            worst = "FAIL"
        elif rec.status == "SKIPPED" and worst == "PASS":
            worst = "SKIPPED"
    return {"PASS": 0, "SKIPPED": 3, "FAIL": 1}[worst]


if __name__ == "__main__":
    sys.exit(main())
