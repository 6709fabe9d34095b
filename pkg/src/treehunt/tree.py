"""Port-numbered rooted trees, level statistics, canonical codes and relabelings.

A tree is rooted at the agent's start node.  Every node of degree d labels its
incident edges with ports 0..d-1; labels carry no global consistency.  All
values here are immutable after construction and safe to share between
concurrent readers.
"""

from __future__ import annotations

import itertools
import json
import math
import random
from collections import deque
from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from typing import Iterator, Optional

DEFAULT_RELABEL_CAP = 100_000


class RelabelCapError(ValueError):
    """Exhaustive relabeling requested for a tree above the configured cap."""


@dataclass(frozen=True)
class LevelProfile:
    """Per-level node counts with prefix sums for O(1) range queries."""

    counts: tuple[int, ...]

    @cached_property
    def prefix(self) -> tuple[int, ...]:
        out = []
        total = 0
        for c in self.counts:
            total += c
            out.append(total)
        return tuple(out)

    @property
    def depth(self) -> int:
        return len(self.counts) - 1

    def cumulative(self, d1: int, d2: int) -> int:
        """Number of nodes at levels d1..d2 inclusive."""
        if not 1 <= d1 <= d2 <= self.depth:
            raise ValueError(f"level range [{d1}, {d2}] outside [1, {self.depth}]")
        return self.prefix[d2] - self.prefix[d1 - 1]

    def upto(self, h: int) -> int:
        """Number of nodes at levels 1..h; 0 when h == 0."""
        if not 0 <= h <= self.depth:
            raise ValueError(f"level {h} outside [0, {self.depth}]")
        return self.prefix[h] - 1


@dataclass(frozen=True)
class PortTree:
    """A rooted tree with explicit ports on both endpoints of every edge.

    `parent[v]` / `parent_port[v]` are None exactly at the root.  `children[v]`
    is a tuple of (port-at-v, child-id) pairs kept sorted by port.  Node ids
    are dense integers; the root is id 0 in serialized form.
    """

    parent: tuple[Optional[int], ...]
    parent_port: tuple[Optional[int], ...]
    children: tuple[tuple[tuple[int, int], ...], ...]
    root: int = 0

    @classmethod
    def from_records(cls, parent, parent_port, children, root=0) -> "PortTree":
        kids = tuple(tuple(sorted(ks)) for ks in children)
        return cls(tuple(parent), tuple(parent_port), kids, root)

    @property
    def n(self) -> int:
        return len(self.parent)

    def degree(self, v: int) -> int:
        return len(self.children[v]) + (self.parent[v] is not None)

    @cached_property
    def level(self) -> tuple[int, ...]:
        lev = [0] * self.n
        stack = [self.root]
        while stack:
            v = stack.pop()
            for _, c in self.children[v]:
                lev[c] = lev[v] + 1
                stack.append(c)
        return tuple(lev)

    @cached_property
    def depth(self) -> int:
        return max(self.level)

    @cached_property
    def _tables(self):
        # ports[v][p] = neighbor reached from v via port p
        # arrival[v][p] = port at that neighbor by which the agent enters it
        up_port = [None] * self.n
        for v in range(self.n):
            for p, c in self.children[v]:
                up_port[c] = p
        ports, arrival = [], []
        for v in range(self.n):
            deg = self.degree(v)
            pv = [-1] * deg
            av = [-1] * deg
            for p, c in self.children[v]:
                pv[p] = c
                av[p] = self.parent_port[c]
            if self.parent[v] is not None:
                pv[self.parent_port[v]] = self.parent[v]
                av[self.parent_port[v]] = up_port[v]
            ports.append(tuple(pv))
            arrival.append(tuple(av))
        return tuple(ports), tuple(arrival)

    @property
    def ports(self):
        return self._tables[0]

    @property
    def arrival(self):
        return self._tables[1]

    def nodes_at_level(self, d: int) -> list[int]:
        return [v for v in range(self.n) if self.level[v] == d]


def level_counts(tree: PortTree) -> LevelProfile:
    counts = [0] * (tree.depth + 1)
    for lv in tree.level:
        counts[lv] += 1
    return LevelProfile(tuple(counts))


@dataclass(frozen=True)
class BlindMap:
    """Port-free description of a rooted tree: canonical shape code + profile.

    The code is invariant under port reassignment and child reordering; two
    trees share a code iff they are root-preserving isomorphic.
    """

    code: str
    profile: LevelProfile

    @property
    def depth(self) -> int:
        return self.profile.depth


def blind_code(tree: PortTree) -> BlindMap:
    """Canonical code by recursive sorted child codes, computed bottom-up."""
    order = sorted(range(tree.n), key=lambda v: tree.level[v], reverse=True)
    code: list[Optional[str]] = [None] * tree.n
    for v in order:
        inner = sorted(code[c] for _, c in tree.children[v])
        code[v] = "(" + "".join(inner) + ")"
    return BlindMap(code[tree.root], level_counts(tree))


def validate(tree: PortTree) -> list[str]:
    """Check every PortTree invariant; returns one message per violation."""
    out = []
    n = tree.n
    roots = [v for v in range(n) if tree.parent[v] is None]
    if roots != [tree.root]:
        out.append(f"structure: root set {roots} does not match declared root {tree.root}")
    for v in range(n):
        if (tree.parent[v] is None) != (tree.parent_port[v] is None):
            out.append(f"node {v}: parent and parent_port must both be set or both absent")
        ports = [p for p, _ in tree.children[v]]
        if tree.parent_port[v] is not None:
            ports.append(tree.parent_port[v])
        deg = len(ports)
        if sorted(ports) != list(range(deg)):
            out.append(f"node {v}: ports {sorted(ports)} are not exactly 0..{deg - 1}")
        for p, c in tree.children[v]:
            if not 0 <= c < n:
                out.append(f"node {v}: child id {c} out of range")
            elif tree.parent[c] != v:
                out.append(f"node {v}: child {c} has parent {tree.parent[c]}")
    seen = set()
    stack = [tree.root] if 0 <= tree.root < n else []
    while stack:
        v = stack.pop()
        if v in seen:
            continue
        seen.add(v)
        for _, c in tree.children[v]:
            if 0 <= c < n:
                stack.append(c)
    if len(seen) != n:
        missing = sorted(set(range(n)) - seen)
        out.append(f"structure: nodes {missing} unreachable from the root")
    return out


def relabel_count(tree: PortTree) -> int:
    """Number of distinct port assignments: product of deg(v)! over all nodes."""
    total = 1
    for v in range(tree.n):
        total *= math.factorial(tree.degree(v))
    return total


def _apply_relabeling(tree: PortTree, perms) -> PortTree:
    """Apply one permutation of {0..deg-1} per node.

    Slot order at each node: parent first (if any), then children in current
    port order; perms[v][slot] is the new port of that slot.
    """
    parent_port = list(tree.parent_port)
    new_children: list[list[tuple[int, int]]] = [[] for _ in range(tree.n)]
    for v in range(tree.n):
        perm = perms[v]
        slot = 0
        if tree.parent[v] is not None:
            parent_port[v] = perm[0]
            slot = 1
        for _, c in tree.children[v]:
            new_children[v].append((perm[slot], c))
            slot += 1
    return PortTree.from_records(tree.parent, parent_port, new_children, tree.root)


def relabelings_exhaustive(tree: PortTree, cap: int = DEFAULT_RELABEL_CAP) -> Iterator[PortTree]:
    """Every distinct port assignment exactly once; refuses above `cap`."""
    count = relabel_count(tree)
    if count > cap:
        raise RelabelCapError(
            f"{count} relabelings exceed the exhaustive cap {cap}; use sampling"
        )
    per_node = [itertools.permutations(range(tree.degree(v))) for v in range(tree.n)]
    for perms in itertools.product(*per_node):
        yield _apply_relabeling(tree, perms)


def relabelings_sampled(tree: PortTree, count: int, seed: int) -> Iterator[PortTree]:
    """Seeded stream of uniform per-node port assignments."""
    rng = random.Random(seed)
    for _ in range(count):
        perms = []
        for v in range(tree.n):
            perm = list(range(tree.degree(v)))
            rng.shuffle(perm)
            perms.append(tuple(perm))
        yield _apply_relabeling(tree, perms)


class KnowledgeKind(Enum):
    COMPLETE_DIST = "complete_dist"
    BLIND_DIST = "blind_dist"
    COMPLETE_NODIST = "complete_nodist"
    BLIND_NODIST = "blind_nodist"

    @property
    def has_distance(self) -> bool:
        return self in (KnowledgeKind.COMPLETE_DIST, KnowledgeKind.BLIND_DIST)

    @property
    def is_blind(self) -> bool:
        return self in (KnowledgeKind.BLIND_DIST, KnowledgeKind.BLIND_NODIST)


@dataclass(frozen=True)
class Knowledge:
    """Initial knowledge handed to a strategy: a map, and optionally the distance."""

    kind: KnowledgeKind
    map: "PortTree | BlindMap"
    distance: Optional[int] = None

    def __post_init__(self):
        if self.kind.is_blind and not isinstance(self.map, BlindMap):
            raise ValueError(f"{self.kind.value} knowledge requires a BlindMap")
        if not self.kind.is_blind and not isinstance(self.map, PortTree):
            raise ValueError(f"{self.kind.value} knowledge requires a PortTree")
        if self.kind.has_distance:
            if self.distance is None:
                raise ValueError(f"{self.kind.value} knowledge requires a distance")
            if not 1 <= self.distance <= self.depth:
                raise ValueError(
                    f"distance {self.distance} outside [1, {self.depth}]"
                )
        elif self.distance is not None:
            raise ValueError(f"{self.kind.value} knowledge carries no distance")

    @property
    def profile(self) -> LevelProfile:
        if isinstance(self.map, BlindMap):
            return self.map.profile
        return level_counts(self.map)

    @property
    def depth(self) -> int:
        if isinstance(self.map, BlindMap):
            return self.map.depth
        return self.map.depth


def knowledge_for(kind: KnowledgeKind, tree: PortTree, distance: Optional[int] = None) -> Knowledge:
    """Build the knowledge an agent of the given type receives about `tree`."""
    map_: PortTree | BlindMap = blind_code(tree) if kind.is_blind else tree
    return Knowledge(kind, map_, distance if kind.has_distance else None)


# -- JSON tree format ---------------------------------------------------------
# {"root": {"children": [{"port_parent": p, "port_child": q, "node": {...}}]}}
# port_parent is the port at the parent, port_child the port at the child
# leading back up.  Canonical serialization sorts children by port_parent.


def tree_to_obj(tree: PortTree) -> dict:
    order = sorted(range(tree.n), key=lambda v: tree.level[v], reverse=True)
    objs: dict[int, dict] = {}
    for v in order:
        kids = [
            {"port_parent": p, "port_child": tree.parent_port[c], "node": objs[c]}
            for p, c in tree.children[v]
        ]
        objs[v] = {"children": kids}
    return {"root": objs[tree.root]}


def tree_to_json(tree: PortTree) -> str:
    return json.dumps(tree_to_obj(tree), separators=(",", ":"))


def tree_from_obj(obj: dict) -> PortTree:
    parent: list[Optional[int]] = [None]
    parent_port: list[Optional[int]] = [None]
    children: list[list[tuple[int, int]]] = [[]]
    queue = deque([(0, obj["root"])])
    while queue:
        v, node = queue.popleft()
        entries = sorted(node.get("children", []), key=lambda e: e["port_parent"])
        for entry in entries:
            c = len(parent)
            parent.append(v)
            parent_port.append(entry["port_child"])
            children[v].append((entry["port_parent"], c))
            children.append([])
            queue.append((c, entry["node"]))
    tree = PortTree.from_records(parent, parent_port, children)
    violations = validate(tree)
    if violations:
        raise ValueError("invalid tree file: " + "; ".join(violations))
    return tree


def tree_from_json(text: str) -> PortTree:
    return tree_from_obj(json.loads(text))
