#!/usr/bin/env python3
"""Sweep the omega invariant over every loopless matroid on up to --max-n
elements (plus the Fano matroid), tally the values, and flag any negative.

Example:
    python scripts/omega_sweep.py --max-n 5 --seed 101
"""

import argparse
import collections
import time

from permuto import euler, matroid, tropical


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-n", type=int, default=6)
    ap.add_argument("--seed", type=int, default=101)
    ap.add_argument("--fano", action="store_true", help="include the Fano matroid")
    ap.add_argument("--verbose", action="store_true", help="print every value")
    args = ap.parse_args()

    tally = collections.Counter()
    negatives = []
    t0 = time.time()
    count = 0
    for n in range(1, args.max_n + 1):
        for r in range(1, n + 1):
            for m in matroid.enumerate_loopless(n, r):
                w = tropical.sample_weight(m, args.seed)
                val = euler.omega(m, w)
                tally[val] += 1
                count += 1
                if val < 0:
                    negatives.append((m, val))
                if args.verbose:
                    print(f"n={n} r={r} bases={len(m.bases)} omega={val}")
        print(f"n<={n}: {count} matroids, {time.time() - t0:.1f}s")
    if args.fano:
        f = matroid.fano()
        val = euler.omega(f, tropical.sample_weight(f, args.seed))
        tally[val] += 1
        print(f"fano: omega={val}")
    print("omega value tally:", dict(sorted(tally.items())))
    if negatives:
        print(f"NEGATIVE omega on {len(negatives)} matroids:")
        for m, val in negatives:
            print(f"  {matroid.dumps(m).strip()} -> {val}")
        raise SystemExit(1)
    print("omega >= 0 throughout")


if __name__ == "__main__":
    main()
