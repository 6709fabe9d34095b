#!/usr/bin/env python3
"""Overhead of each strategy under each applicable knowledge type on a few
standard families, as one CSV table.
"""

from __future__ import annotations

import argparse
import csv
import sys

from treehunt.analytics import RelabelPolicy, overhead
from treehunt.generators import (
    DEFAULT_SEED,
    gen_caterpillar,
    gen_full_binary,
    gen_path,
    gen_star_pendant,
)
from treehunt.tree import KnowledgeKind

CASES = [
    ("path", 16, lambda s: gen_path(16, seed=s)),
    ("full_binary", 6, lambda s: gen_full_binary(6, seed=s)),
    ("caterpillar", 12, lambda s: gen_caterpillar(12, seed=s)),
    ("star_pendant", 12, lambda s: gen_star_pendant(12, seed=s)),
]

STRATEGIES = {
    "algo1": (KnowledgeKind.BLIND_NODIST, KnowledgeKind.COMPLETE_NODIST),
    "doubling": (KnowledgeKind.COMPLETE_NODIST,),
    "incremental": (KnowledgeKind.COMPLETE_NODIST,),
    "optimal": (KnowledgeKind.COMPLETE_DIST,),
}


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--seed", type=int, default=DEFAULT_SEED)
    parser.add_argument("--samples", type=int, default=8)
    parser.add_argument("--out", default=None)
    args = parser.parse_args(argv)

    policy = RelabelPolicy(cap=1024, samples=args.samples, seed=args.seed)
    out = open(args.out, "w", newline="") if args.out else sys.stdout
    writer = csv.writer(out)
    writer.writerow(["family", "param", "strategy", "kind", "m", "overhead", "exactness"])
    for family, param, make in CASES:
        tree = make(args.seed)
        m = tree.depth
        for name, kinds in STRATEGIES.items():
            for kind in kinds:
                rep = overhead(name, tree, kind, m, policy)
                writer.writerow([family, param, name, kind.value, m,
                                 float(rep.value), rep.exactness])
    if args.out:
        out.close()
    return 0


if __name__ == "__main__":
    sys.exit(main())
