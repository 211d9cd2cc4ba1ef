#!/usr/bin/env python3
"""Face-pairing census on the standard triangulated spheres, written as CSV."""
import argparse
import csv
import sys
from collections import Counter

from ribbon_genus import SearchBudget, TriangulatedSphere
from ribbon_genus.facepairing import census, pairing_count


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, nargs="+", default=[1, 2, 3])
    ap.add_argument("--jobs", type=int, default=1)
    ap.add_argument("--budget", type=int, default=None)
    ap.add_argument("--csv", default=None, help="write every row here")
    args = ap.parse_args()
    writer = None
    if args.csv:
        fh = open(args.csv, "w", newline="")
        writer = csv.writer(fh)
        writer.writerow(["n", "pairing", "v", "e", "f", "t", "euler", "is_manifold", "link_genera"])
    for n in args.n:
        sphere = TriangulatedSphere.standard(n)
        budget = SearchBudget(max_nodes=args.budget) if args.budget else None
        rows, truncated = census(sphere, budget=budget, jobs=args.jobs)
        manifolds = sum(r["is_manifold"] for r in rows)
        genera = Counter(max(r["link_genera"]) for r in rows)
        additive = all(r["euler"] == sum(r["link_genera"]) for r in rows)
        print(f"n={n}: {len(rows)}/{pairing_count(n)} pairings{' (truncated)' if truncated else ''}, "
              f"{manifolds} manifolds, max link genus histogram {dict(sorted(genera.items()))}, "
              f"euler == sum of link genera: {additive}")
        if writer:
            for r in rows:
                writer.writerow([n, r["pairing"], r["v"], r["e"], r["f"], r["t"], r["euler"],
                                 r["is_manifold"], " ".join(map(str, r["link_genera"]))])
    if writer:
        fh.close()
        print(f"rows written to {args.csv}", file=sys.stderr)


if __name__ == "__main__":
    main()
