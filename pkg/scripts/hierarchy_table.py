#!/usr/bin/env python3
"""Link genus <= shuffle minimum <= canonical genus for every corpus entry."""
import argparse

from ribbon_genus import SearchBudget, hierarchy_check
from ribbon_genus.corpus import items


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--budget", type=int, default=50_000)
    args = ap.parse_args()
    budget = SearchBudget(max_nodes=args.budget)
    print(f"{'name':20s} {'link':>6s} {'shmin':>6s} {'canon':>6s} {'bound':>6s}")
    for name, p in items():
        r = hierarchy_check(p, budget)
        link = str(r.link_genus) if r.link_exact else f"{r.link_genus_lower}-{r.link_genus_upper}"
        sh = str(r.shuffle_min_genus) + ("" if r.shuffle_exact else "?")
        bound = "-" if r.upper_bound is None else str(r.upper_bound)
        print(f"{name:20s} {link:>6s} {sh:>6s} {r.t_genus:>6d} {bound:>6s}")


if __name__ == "__main__":
    main()
