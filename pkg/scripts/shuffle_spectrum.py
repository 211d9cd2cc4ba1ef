#!/usr/bin/env python3
"""Histogram of genus over every shuffle of a presentation (pinned slot 1)."""
import argparse

from ribbon_genus import parse_presentation
from ribbon_genus.corpus import CORPUS
from ribbon_genus.genus_search import genus_spectrum, shuffle_space_size
from ribbon_genus.ribbon import build_canonical_surface


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("presentation", nargs="?", default=CORPUS["q_reduced_literal"],
                    help="presentation text or corpus name")
    ap.add_argument("--convention", default="B", choices="AB")
    ap.add_argument("--limit", type=int, default=2_000_000, help="refuse larger shuffle spaces")
    args = ap.parse_args()
    p = parse_presentation(CORPUS.get(args.presentation, args.presentation))
    size = shuffle_space_size(build_canonical_surface(p).degrees)
    if size > args.limit:
        raise SystemExit(f"{size} shuffles exceed --limit {args.limit}")
    spec = genus_spectrum(p, args.convention)
    total = sum(spec.values())
    print(f"{size} shuffles")
    for g in sorted(spec):
        print(f"genus {g}: {spec[g]:>8d}  ({spec[g] / total:.3f})")


if __name__ == "__main__":
    main()
