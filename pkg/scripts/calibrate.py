#!/usr/bin/env python3
"""Canonical and shuffle-minimal genus of the calibration fixtures under both disc conventions."""
import argparse

from ribbon_genus import SearchBudget, min_genus_over_shuffles, presentation_genus
from ribbon_genus.corpus import load

# fixture -> expected genus
TARGETS = {
    "z6_amalgam": 1,
    "z6_amalgam_small": 1,
    "bs_2_3": 1,
    "p_reduced": 2,
    "q_reduced_literal": 1,
    "utilities": 2,
}


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--budget", type=int, default=200_000)
    args = ap.parse_args()
    budget = SearchBudget(max_nodes=args.budget)
    print(f"{'fixture':20s} {'want':>4s} " + " ".join(f"{c}:canon {c}:shmin" for c in "AB"))
    hits = {"A": 0, "B": 0}
    for name, want in TARGETS.items():
        p = load(name)
        cols = []
        for conv in "AB":
            t = presentation_genus(p, conv)
            s = min_genus_over_shuffles(p, budget, conv).genus
            hits[conv] += want in (t, s)
            cols.append(f"{t:>7d} {s:>7d}")
        print(f"{name:20s} {want:>4d} " + " ".join(cols))
    for conv, n in hits.items():
        print(f"convention {conv}: {n}/{len(TARGETS)} fixtures reproduced")


if __name__ == "__main__":
    main()
