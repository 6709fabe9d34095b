"""Brute-force ground truth on small instances.

The cover-walk search deliberately ignores everything the planner knows about
tree structure: it is a plain uniform-cost search over (position, covered)
states, which is the point of an oracle.
"""

from __future__ import annotations

from collections import deque
from functools import lru_cache

from .generators import TreeBuilder
from .tree import PortTree

MAX_COVER_TARGETS = 16
MAX_ISO_NODES = 2000

# rooted tree shapes on 1..8 nodes; the catalog is rejected unless the
# enumeration reproduces these counts
ROOTED_SHAPE_COUNTS = (1, 1, 2, 4, 9, 20, 48, 115)


def min_cover_walk(tree: PortTree, targets) -> tuple[int, list[int]]:
    """Exact minimum number of moves from the root until every target node has
    been visited, plus one witness walk as a node sequence (root first)."""
    targets = sorted(set(targets))
    if len(targets) > MAX_COVER_TARGETS:
        raise ValueError(
            f"{len(targets)} targets exceed the oracle cap {MAX_COVER_TARGETS}"
        )
    index = {v: i for i, v in enumerate(targets)}
    full = (1 << len(targets)) - 1
    ports = tree.ports

    start_mask = 1 << index[tree.root] if tree.root in index else 0
    start = (tree.root, start_mask)
    if start_mask == full:
        return 0, [tree.root]
    prev: dict[tuple[int, int], tuple[int, int]] = {start: None}
    queue = deque([(start, 0)])
    while queue:
        state, cost = queue.popleft()
        pos, mask = state
        for nxt in ports[pos]:
            bit = 1 << index[nxt] if nxt in index else 0
            nstate = (nxt, mask | bit)
            if nstate in prev:
                continue
            prev[nstate] = state
            if nstate[1] == full:
                walk = [nxt]
                back = state
                while back is not None:
                    walk.append(back[0])
                    back = prev[back]
                walk.reverse()
                return cost + 1, walk
            queue.append((nstate, cost + 1))
    raise RuntimeError("cover search exhausted the state space")  # unreachable on valid trees


def iso_check(t1: PortTree, t2: PortTree) -> bool:
    """Root-preserving, port-ignoring isomorphism by recursive multiset
    matching of child subtrees (memoized across node pairs)."""
    if t1.n + t2.n > MAX_ISO_NODES:
        raise ValueError(f"combined size {t1.n + t2.n} exceeds {MAX_ISO_NODES} nodes")
    if t1.n != t2.n:
        return False

    size1 = _subtree_sizes(t1)
    size2 = _subtree_sizes(t2)
    memo: dict[tuple[int, int], bool] = {}

    def match(u: int, v: int) -> bool:
        key = (u, v)
        if key in memo:
            return memo[key]
        kids_u = [c for _, c in t1.children[u]]
        kids_v = [c for _, c in t2.children[v]]
        ok = len(kids_u) == len(kids_v) and sorted(size1[c] for c in kids_u) == sorted(
            size2[c] for c in kids_v
        )
        if ok:
            # isomorphism is an equivalence, so greedy matching is exact
            avail = list(kids_v)
            for cu in kids_u:
                for i, cv in enumerate(avail):
                    if size1[cu] == size2[cv] and match(cu, cv):
                        del avail[i]
                        break
                else:
                    ok = False
                    break
        memo[key] = ok
        return ok

    return match(t1.root, t2.root)


def _subtree_sizes(tree: PortTree) -> list[int]:
    size = [1] * tree.n
    for v in sorted(range(tree.n), key=lambda v: tree.level[v], reverse=True):
        for _, c in tree.children[v]:
            size[v] += size[c]
    return size


@lru_cache(maxsize=None)
def _shapes(n: int) -> tuple:
    """All rooted shapes with n nodes as canonical nested tuples: a shape is
    the sorted tuple of its child shapes."""
    if n == 1:
        return ((),)
    out = []

    def extend(remaining, max_child, chosen):
        if remaining == 0:
            out.append(tuple(chosen))
            return
        for size in range(min(remaining, max_child[0]), 0, -1):
            for shape in _shapes(size):
                if size == max_child[0] and shape > max_child[1]:
                    continue
                chosen.append(shape)
                extend(remaining - size, (size, shape), chosen)
                chosen.pop()

    extend(n - 1, (n - 1, max(_shapes(n - 1))), [])
    return tuple(out)


def _shape_to_tree(shape) -> PortTree:
    b = TreeBuilder()

    def attach(parent, sub):
        for child_shape in sub:
            v = b.add_child(parent)
            attach(v, child_shape)

    attach(0, shape)
    return b.build(port_mode="sorted")


def shape_catalog(max_nodes: int = 8) -> list[PortTree]:
    """One PortTree per rooted shape with up to `max_nodes` nodes.

    Refuses to return anything if the per-size counts disagree with the known
    sequence, so downstream certification never trusts a broken enumeration."""
    if max_nodes > len(ROOTED_SHAPE_COUNTS):
        raise ValueError(f"catalog counts only known up to {len(ROOTED_SHAPE_COUNTS)} nodes")
    trees = []
    for n in range(1, max_nodes + 1):
        shapes = _shapes(n)
        expected = ROOTED_SHAPE_COUNTS[n - 1]
        if len(shapes) != expected:
            raise RuntimeError(
                f"shape enumeration produced {len(shapes)} shapes for n={n}, expected {expected}"
            )
        trees.extend(_shape_to_tree(s) for s in shapes)
    return trees
