"""Every search procedure analyzed here: level-scheduled sweeps, doubling,
incremental deepening, the caterpillar spine walk, and the exact planner for
a fully informed agent."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Generator, Optional

from .engine import Observation, Strategy
from .tree import (
    BlindMap,
    Knowledge,
    KnowledgeKind,
    LevelProfile,
    PortTree,
    blind_code,
    level_counts,
)


@dataclass(frozen=True)
class ScheduleStep:
    """One scheduler iteration: sweep level, next-threshold level, branch truth
    and cumulative sweep cost.  `threshold`/`branch` are None on the final
    step (the loop head is never evaluated again) and `clamped` marks a step
    whose successor level was forced down to the tree depth because no
    threshold level exists."""

    level: int
    threshold: Optional[int]
    branch: Optional[bool]
    cumulative_cost: int
    clamped: bool = False


@dataclass(frozen=True)
class ScheduleTrace:
    steps: tuple[ScheduleStep, ...]

    @property
    def levels(self) -> tuple[int, ...]:
        return tuple(s.level for s in self.steps)


def blind_schedule(map_: "BlindMap | LevelProfile", depth_cap: Optional[int] = None) -> ScheduleTrace:
    """Pure computation of the sweep-level schedule, without moving.

    Starting at level 1: after sweeping level h, find the least k >= h+1 with
    at least as many nodes in levels h+1..k as in levels 1..h; back off to k-1
    when that block is >= 3x bigger and k >= h+2, else jump to k.  When no k
    exists within the tree, the final sweep level is clamped to the depth."""
    profile = map_.profile if isinstance(map_, BlindMap) else map_
    if depth_cap is None:
        depth_cap = profile.depth
    steps: list[ScheduleStep] = []
    if depth_cap < 1:
        return ScheduleTrace(())
    h = 1
    cost = 0
    while True:
        cost += 2 * profile.upto(min(h, profile.depth))
        if h >= depth_cap:
            steps.append(ScheduleStep(h, None, None, cost))
            break
        target = profile.upto(h)
        k = None
        for i in range(h + 1, profile.depth + 1):
            if profile.cumulative(h + 1, i) >= target:
                k = i
                break
        if k is None:
            steps.append(ScheduleStep(h, None, None, cost, clamped=True))
            h = profile.depth
            continue
        branch = profile.cumulative(h + 1, k) >= 3 * target and k >= h + 2
        steps.append(ScheduleStep(h, k, branch, cost))
        h = k - 1 if branch else k
    return ScheduleTrace(tuple(steps))


def _sweep(obs: Observation, levels: int) -> Generator[int, Observation, None]:
    """DFS below the current node for `levels` more levels, children in
    increasing port order, skipping the entry port; ends back where it began."""
    if levels <= 0:
        return
    skip = obs.entry_port
    for p in range(obs.degree):
        if p == skip:
            continue
        child = yield p
        yield from _sweep(child, levels - 1)
        yield child.entry_port


def _fresh_root(obs: Observation) -> Observation:
    # a sweep starting at the root must not skip the port it last arrived by
    return Observation(obs.degree, None, True)


class DfsToLevel(Strategy):
    """One full sweep of all levels <= h, then halt.  Full-sweep move count is
    exactly twice the number of nodes at levels 1..h."""

    def __init__(self, h: int):
        if h < 1:
            raise ValueError(f"DFS level must be >= 1, got {h}")
        self.h = h
        self.name = f"dfs:{h}"

    def plan(self, knowledge, start):
        yield from _sweep(_fresh_root(start), self.h)


class Algorithm1(Strategy):
    """Level-scheduled search from a map: sweep each scheduled level in turn.

    Distance-oblivious; ports in a complete map are ignored (the profile is
    all the schedule needs).  The caller stops the run once the target level
    is covered."""

    name = "algo1"

    def plan(self, knowledge, start):
        schedule = blind_schedule(knowledge.profile)
        root = _fresh_root(start)
        for step in schedule.steps:
            yield from _sweep(root, step.level)


class Doubling(Strategy):
    """Sweeps at levels 2, 4, 8, ... until the map depth is reached."""

    name = "doubling"

    def plan(self, knowledge, start):
        root = _fresh_root(start)
        depth = knowledge.depth
        i = 1
        while True:
            level = 2**i
            yield from _sweep(root, level)
            if level >= depth:
                return
            i += 1


class Incremental(Strategy):
    """Sweeps at levels 1, 2, 3, ... until the map depth is reached."""

    name = "incremental"

    def plan(self, knowledge, start):
        root = _fresh_root(start)
        for level in range(1, knowledge.depth + 1):
            yield from _sweep(root, level)


@lru_cache(maxsize=None)
def _caterpillar_code(l: int) -> str:
    from .generators import gen_caterpillar

    return blind_code(gen_caterpillar(l)).code


class SpineWalk(Strategy):
    """Caterpillar-specific walk for an agent knowing the distance d.

    d = 1: probe both root children (3 moves).  d >= 2: advance down the spine
    to u_{d-2}, telling the spine child (degree 3) from the pendant (degree
    >= 4) with at most one wasted probe per hop, then sweep that subtree two
    levels deep.  Total cost at most 5d+4."""

    name = "spine"

    def __init__(self, d: Optional[int] = None):
        self.d = d

    def plan(self, knowledge, start):
        d = self.d if self.d is not None else knowledge.distance
        if d is None:
            raise ValueError("spine walk needs the distance to the treasure")
        l = knowledge.depth
        if not isinstance(knowledge.map, BlindMap) or knowledge.map.code != _caterpillar_code(l):
            raise ValueError("spine walk only applies to caterpillar blind maps")
        if not 1 <= d <= l:
            raise ValueError(f"distance {d} outside [1, {l}]")
        if d == 1:
            first = yield 0
            yield first.entry_port
            yield 1
            return
        obs = _fresh_root(start)
        for _ in range(d - 2):
            candidates = [p for p in range(obs.degree) if p != obs.entry_port]
            child = yield candidates[0]
            if child.degree >= 4:  # pendant; back up and take the other child
                yield child.entry_port
                child = yield candidates[1]
            obs = child
        yield from _sweep(obs, 2)


class PlannedWalk(Strategy):
    """Replays a fixed port sequence; used by the fully informed planner."""

    name = "planned"

    def __init__(self, walk: list[int]):
        self.walk = list(walk)

    def plan(self, knowledge, start):
        for port in self.walk:
            yield port


def optimal_known(tree: PortTree, d: int) -> tuple[int, list[int]]:
    """Minimum-cost walk first-visiting all level-d nodes, for an agent with a
    complete map and the exact distance.

    Sweeps the union of root-to-level-d paths and stops at the last target,
    for a cost of twice that subtree's edge count minus d.  Returns (cost,
    port walk)."""
    if not 1 <= d <= tree.depth:
        raise ValueError(f"level {d} outside [1, {tree.depth}]")
    keep = [False] * tree.n
    for v in range(tree.n):
        if tree.level[v] == d:
            u = v
            while u is not None and not keep[u]:
                keep[u] = True
                u = tree.parent[u]
    walk: list[int] = []
    stack: list[tuple[int, bool]] = [(tree.root, False)]
    while stack:
        v, leaving = stack.pop()
        if leaving:
            walk.append(tree.parent_port[v])
            continue
        if v != tree.root:
            port_here = next(p for p, c in tree.children[tree.parent[v]] if c == v)
            walk.append(port_here)
            stack.append((v, True))
        for p, c in reversed(tree.children[v]):
            if keep[c]:
                stack.append((c, False))
    # every leaf of the kept subtree is a level-d target; after the last one
    # only the ascent to the root remains, which the agent skips
    cost = len(walk) - d
    return cost, walk[:cost]


class OptimalKnown(Strategy):
    """Plans the exact minimum covering walk from a complete map + distance."""

    name = "optimal"

    def plan(self, knowledge, start):
        if knowledge.kind is not KnowledgeKind.COMPLETE_DIST:
            raise ValueError("optimal strategy needs a complete map and the distance")
        _, walk = optimal_known(knowledge.map, knowledge.distance)
        for port in walk:
            yield port


STRATEGY_NAMES = ("dfs:<h>", "algo1", "doubling", "incremental", "spine", "optimal")


def make_strategy(name: str) -> Strategy:
    """Resolve a CLI strategy name to a fresh instance."""
    if name.startswith("dfs:"):
        return DfsToLevel(int(name.split(":", 1)[1]))
    table = {
        "algo1": Algorithm1,
        "doubling": Doubling,
        "incremental": Incremental,
        "spine": SpineWalk,
        "optimal": OptimalKnown,
    }
    if name not in table:
        raise ValueError(
            f"unknown strategy {name!r}; valid names: {', '.join(STRATEGY_NAMES)}"
        )
    return table[name]()
