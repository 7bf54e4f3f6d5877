#!/usr/bin/env python3
"""Estimate how often random rational metrics are generic, by size and resolution.

Usage:
    python scripts/genericity_survey.py [--n 5 6] [--seeds 50] [--resolution R]

Random metrics draw entries 1 + k/resolution, so coarser resolutions force
more height coincidences; the survey prints the non-generic seeds and the
observed tight-span dimension spectrum of the generic ones.
"""

import argparse
import sys
from collections import Counter

from tightspan.facevectors import tightspan_vectors
from tightspan.metrics import gen_random
from tightspan.subdivision import is_generic


def main() -> int:
    ap = argparse.ArgumentParser()
    ap.add_argument("--n", type=int, nargs="+", default=[5, 6])
    ap.add_argument("--seeds", type=int, default=50)
    ap.add_argument("--resolution", type=int, default=0)
    args = ap.parse_args()

    for n in args.n:
        bad = []
        dims = Counter()
        for seed in range(1, args.seeds + 1):
            d = gen_random(n, seed, args.resolution)
            verdict = is_generic(d)
            if not verdict.generic:
                bad.append(seed)
                continue
            tv = tightspan_vectors(d, verdict.subdivision)
            dims[tv.dim] += 1
        rate = (args.seeds - len(bad)) / args.seeds
        print(f"n = {n}: {rate:.0%} generic over {args.seeds} seeds")
        if bad:
            print(f"  non-generic seeds: {bad}")
        print(f"  span dimensions: {dict(sorted(dims.items()))}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
