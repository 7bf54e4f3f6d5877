#!/usr/bin/env python3
"""Survey how the extremal metric families sit against the face-count bounds.

Usage:
    python scripts/bound_attainment.py [--n-max N]

For each n up to the cap, prints the bound row F_k(n), the tight-span
f-vectors of the two extremal families, and which entries are attained.
Enumeration runs up to n = 7; n = 8 uses the ridge traversal.
"""

import argparse
import sys
import time

from tightspan.bounds import F_bound, lower_bound_top, verify_metric_against_bounds
from tightspan.facevectors import tightspan_vectors
from tightspan.metrics import gen_dmax, gen_dmin
from tightspan.subdivision import all_faces, enumerate_cells, seed_cell, traverse_cells


def span_vectors(d):
    if d.n <= 7:
        sub = enumerate_cells(d)
    else:
        sub = traverse_cells(d, seed_cell(d))
    return tightspan_vectors(d, sub, all_faces(sub))


def main() -> int:
    ap = argparse.ArgumentParser()
    ap.add_argument("--n-max", type=int, default=8)
    args = ap.parse_args()

    for n in range(4, args.n_max + 1):
        bounds = [F_bound(n, k) for k in range(n // 2 + 1)]
        print(f"n = {n}")
        print(f"  F_k bound      : {bounds}")
        for name, gen in (("max family", gen_dmax), ("min family", gen_dmin)):
            d = gen(n)
            t0 = time.monotonic()
            tv = span_vectors(d)
            rep = verify_metric_against_bounds(d, tv)
            marks = "".join("*" if r.f_attained else "." for r in rep.rows)
            print(
                f"  {name:<15}: fT = {list(tv.fT)}  attained[{marks}]"
                f"  dim = {rep.dim}  ({time.monotonic() - t0:.1f}s)"
            )
            if rep.top_count is not None:
                print(
                    f"  {'':<15}  top faces {rep.top_count}"
                    f" vs guaranteed {lower_bound_top(n)}"
                )
    return 0


if __name__ == "__main__":
    sys.exit(main())
