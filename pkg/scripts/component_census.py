#!/usr/bin/env python3
"""Census of hyperbolicity components hit by random matrix pairs.

Samples pairs of determinant-one matrices, classifies each over the full
2-shift, and tabulates the outcome: principal / component sign word /
elliptic witness length / degenerate.  A quick picture of how the component
structure fills parameter space at a given entry scale.

Usage: python scripts/component_census.py [--samples N] [--scale S] [--seed K]
"""

import argparse
import collections
import random
import sys

from hypercone.sl2core import Mat2
from hypercone.twoshift import (Degenerate, EllipticWitness, NonPrincipal,
                                Principal, classify_pair)


def random_sl2(rng, scale):
    while True:
        a = rng.uniform(-scale, scale)
        b = rng.uniform(-scale, scale)
        c = rng.uniform(-scale, scale)
        if abs(a) > 1e-6:
            return Mat2(a, b, c, (1.0 + b * c) / a)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--samples", type=int, default=20000)
    ap.add_argument("--scale", type=float, default=3.0)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)

    rng = random.Random(args.seed)
    tally = collections.Counter()
    fwords = collections.Counter()
    for _ in range(args.samples):
        A = random_sl2(rng, args.scale)
        B = random_sl2(rng, args.scale)
        c = classify_pair(A, B)
        if isinstance(c, Principal):
            tally["principal"] += 1
        elif isinstance(c, NonPrincipal):
            tally["non_principal"] += 1
            fwords[c.fword or "(free)"] += 1
        elif isinstance(c, EllipticWitness):
            tally[f"elliptic (witness length {len(c.word)})"] += 1
        elif isinstance(c, Degenerate):
            tally["degenerate"] += 1

    total = args.samples
    print(f"samples: {total}, entry scale: {args.scale}")
    for key in sorted(tally, key=tally.get, reverse=True):
        print(f"  {key:36s} {tally[key]:7d}  ({tally[key] / total:6.2%})")
    if fwords:
        print("non-principal components by sign word:")
        for word, n in fwords.most_common(12):
            print(f"  {word:12s} {n:6d}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
