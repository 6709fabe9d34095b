#!/usr/bin/env python3
"""Penalty-witness curves: how the weak/strong overhead ratio grows with the
instance parameter for each witness family.

Writes CSV to stdout (or --out).  Reruns with the same seed are identical.
"""

from __future__ import annotations

import argparse
import csv
import sys

from treehunt.analytics import (
    RelabelPolicy,
    penalty_witness_caterpillar,
    penalty_witness_doubling,
    penalty_witness_star,
)
from treehunt.generators import DEFAULT_SEED


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--seed", type=int, default=DEFAULT_SEED)
    parser.add_argument("--star-max", type=int, default=40)
    parser.add_argument("--cat-max", type=int, default=30)
    parser.add_argument("--doubling-max-k", type=int, default=3)
    parser.add_argument("--samples", type=int, default=8)
    parser.add_argument("--out", default=None)
    args = parser.parse_args(argv)

    policy = RelabelPolicy(samples=args.samples, seed=args.seed)
    out = open(args.out, "w", newline="") if args.out else sys.stdout
    writer = csv.writer(out)
    writer.writerow(["family", "param", "m", "weak", "strong", "ratio"])

    for n in range(2, args.star_max + 1):
        w = penalty_witness_star(n, policy)
        writer.writerow([w.family, n, w.m, float(w.weak_overhead),
                         float(w.strong_overhead), float(w.ratio)])

    for l in range(2, args.cat_max + 1):
        w = penalty_witness_caterpillar(l, policy)
        writer.writerow([w.family, l, w.m, float(w.weak_overhead),
                         float(w.strong_overhead), float(w.ratio)])

    for k in range(1, args.doubling_max_k + 1):
        rep = penalty_witness_doubling(k)
        ratio = rep.doubling_overhead / rep.incremental_overhead
        writer.writerow(["doubling_vs_incremental", k, rep.m,
                         float(rep.doubling_overhead),
                         float(rep.incremental_overhead), float(ratio)])

    if args.out:
        out.close()
    return 0


if __name__ == "__main__":
    sys.exit(main())
