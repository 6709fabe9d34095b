"""Shared fixtures and an independent reference walker.

The reference walker recomputes sweep walks straight from the port tables,
bypassing the strategy/engine machinery, so frozen cost values in the tests
are certified by two unrelated code paths.
"""

from __future__ import annotations

import random

import pytest

from treehunt.corpus import acceptance_corpus, small_even_corpus
from treehunt.generators import gen_random
from treehunt.oracle import shape_catalog
from treehunt.tree import PortTree


@pytest.fixture(scope="session")
def corpus200():
    entries = acceptance_corpus()
    assert len(entries) == 200
    return entries


@pytest.fixture(scope="session")
def catalog8():
    return shape_catalog(8)


@pytest.fixture(scope="session")
def even50():
    return small_even_corpus(count=50)


def reference_sweep(tree: PortTree, h: int) -> list[int]:
    """Node walk of one full depth-h sweep, recomputed directly from the port
    tables: take every non-entry port in increasing order, recurse one level
    shallower, return by the entry port."""
    walk: list[int] = []

    def dfs(v: int, entry, remaining: int) -> None:
        if remaining == 0:
            return
        for p in range(len(tree.ports[v])):
            if p == entry:
                continue
            u = tree.ports[v][p]
            walk.append(u)
            dfs(u, tree.arrival[v][p], remaining - 1)
            walk.append(v)

    dfs(tree.root, None, h)
    return walk


def reference_cost(walks: list[list[int]], tree: PortTree, d: int) -> int:
    """Worst first-visit time over level-d nodes in the concatenation of the
    given node walks (each assumed to start after the previous one ends)."""
    first = {tree.root: 0}
    t = 0
    for walk in walks:
        for v in walk:
            t += 1
            first.setdefault(v, t)
    return max(first[v] for v in range(tree.n) if tree.level[v] == d)


def random_trees(count: int, seed: int, max_nodes: int = 40) -> list[PortTree]:
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        n = rng.randint(2, max_nodes)
        deg = rng.randint(2, 5)
        out.append(gen_random(n, deg, rng.randrange(2**31)))
    return out
