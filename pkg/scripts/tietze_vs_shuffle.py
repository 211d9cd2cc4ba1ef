#!/usr/bin/env python3
"""Do shuffles buy anything that Tietze moves alone cannot?

For each small corpus entry compare the shuffle minimum with the best canonical
genus found in a Tietze ball, and with the Tietze ball searched over shuffles.
"""
import argparse
from collections import deque

from ribbon_genus import SearchBudget, group_genus_upper, min_genus_over_shuffles, presentation_genus
from ribbon_genus.corpus import items
from ribbon_genus.genus_search import tietze_neighbors


def canonical_ball_min(p, depth, cap):
    seen = {p}
    queue = deque([(p, 0)])
    best, visited = presentation_genus(p), 0
    while queue and visited < cap:
        q, dist = queue.popleft()
        visited += 1
        best = min(best, presentation_genus(q))
        if dist < depth:
            for _, nxt in tietze_neighbors(q):
                if nxt not in seen:
                    seen.add(nxt)
                    queue.append((nxt, dist + 1))
    return best, visited


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--depth", type=int, default=1)
    ap.add_argument("--cap", type=int, default=400, help="max presentations per ball")
    ap.add_argument("--max-length", type=int, default=8, help="skip presentations longer than this")
    args = ap.parse_args()
    budget = SearchBudget(max_nodes=20_000)
    print(f"{'name':20s} canon tietze-canon shuffle-min tietze+shuffle")
    for name, p in items():
        if sum(len(r) for r in p.relators) > args.max_length:
            continue
        t = presentation_genus(p)
        tc, _ = canonical_ball_min(p, args.depth, args.cap)
        sm = min_genus_over_shuffles(p, budget).genus
        gu = group_genus_upper(p, depth=args.depth, budget=budget, max_presentations=args.cap,
                               per_presentation_nodes=2_000).genus
        flag = "  <- shuffles needed" if sm < tc else ""
        print(f"{name:20s} {t:5d} {tc:12d} {sm:11d} {gu:14d}{flag}")


if __name__ == "__main__":
    main()
