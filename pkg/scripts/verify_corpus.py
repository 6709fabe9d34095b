#!/usr/bin/env python3
"""Re-verify the level scheduler's guarantees over the whole benchmark corpus
and report the tightest observed slack against the 16x budget.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from treehunt.analytics import check_schedule_bound
from treehunt.corpus import default_corpus
from treehunt.engine import cost_until_level, run
from treehunt.generators import DEFAULT_SEED
from treehunt.strategies import Algorithm1, blind_schedule
from treehunt.tree import KnowledgeKind, knowledge_for, level_counts


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--seed", type=int, default=DEFAULT_SEED)
    args = parser.parse_args(argv)

    entries = default_corpus(args.seed)
    failures = 0
    tightest = None  # (ratio cost / 16 L, family, param, d)
    instances = 0
    for entry in entries:
        tree = entry.tree
        if tree.depth < 1:
            continue
        profile = level_counts(tree)
        schedule = blind_schedule(profile)
        know = knowledge_for(KnowledgeKind.BLIND_NODIST, tree)
        trace = run(Algorithm1(), know, tree, check=False, record_decisions=False)
        for d in range(1, tree.depth + 1):
            instances += 1
            report = check_schedule_bound(tree, trace, schedule, d)
            if not report.passed:
                failures += 1
                for c in report.failures():
                    print(f"FAIL {entry.family}({entry.param}) d={d}: {c.name} {c.details}")
                continue
            ratio = Fraction(cost_until_level(trace, tree, d), 16 * profile.upto(d))
            if tightest is None or ratio > tightest[0]:
                tightest = (ratio, entry.family, entry.param, d)

    print(f"corpus trees: {len(entries)}, (tree, d) instances: {instances}, failures: {failures}")
    if tightest:
        ratio, family, param, d = tightest
        print(f"tightest budget use: {float(ratio):.3f} of 16x on {family}({param}) at d={d}")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
