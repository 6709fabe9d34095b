"""Single-agent execution against a hidden tree, with exact move accounting.

The strategy never sees the environment: it receives its initial Knowledge
once, then one Observation per arrival, and answers with a port number (or
halts).  Node ids appear only in traces, as instrumentation.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Generator, Optional

from .tree import Knowledge, KnowledgeKind, PortTree, blind_code


@dataclass(frozen=True, slots=True)
class Observation:
    """What the agent perceives on arrival at a node."""

    degree: int
    entry_port: Optional[int]  # None at the root before the first move
    at_root: bool


@dataclass
class Trace:
    """Time-stamped move record of one run.

    `moves[t-1] = (t, departed, port, arrived)`; consecutive moves chain.
    `first_visit` maps node id to the earliest occupation time (root -> 0).
    `decisions` pairs each choice with the observation that prompted it.
    """

    moves: list[tuple[int, int, int, int]]
    first_visit: dict[int, int]
    total_moves: int
    decisions: Optional[list[tuple[int, Optional[int], bool, int]]] = None


class Strategy:
    """Resumable decision procedure.

    `plan` is a generator: it yields the next port to take and receives the
    Observation made after the move; returning halts the agent.  Histories
    live inside the generator; one instance serves one run.
    """

    name = "strategy"

    def plan(self, knowledge: Knowledge, start: Observation) -> Generator[int, Observation, None]:
        raise NotImplementedError


class ProtocolError(RuntimeError):
    """The strategy emitted a port outside 0..degree-1."""


class SetupError(ValueError):
    """Knowledge inconsistent with the environment."""


class CoverageError(RuntimeError):
    """The trace never visited some node at the requested level."""


class FuelError(RuntimeError):
    """Move budget exhausted; carries the partial trace."""

    def __init__(self, message: str, partial: Trace):
        super().__init__(message)
        self.partial = partial


def default_fuel(n: int) -> int:
    # strictly above 16*L_1^d <= 16n and any implemented strategy's worst case
    return 8 * n * n


def check_consistency(knowledge: Knowledge, environment: PortTree) -> None:
    if knowledge.kind.is_blind:
        if knowledge.map.code != blind_code(environment).code:
            raise SetupError("blind map does not match the environment's shape")
    else:
        if knowledge.map != environment:
            raise SetupError("complete map is not identical to the environment")
    if knowledge.distance is not None and not 1 <= knowledge.distance <= environment.depth:
        raise SetupError(f"distance {knowledge.distance} outside [1, {environment.depth}]")


def run(
    strategy: Strategy,
    knowledge: Knowledge,
    environment: PortTree,
    fuel: Optional[int] = None,
    stop_level: Optional[int] = None,
    record_decisions: bool = True,
    check: bool = True,
) -> Trace:
    """Execute one run; returns the trace.

    With `stop_level` set, the run ends right after the move that first-visits
    the last node at that level (the engine-side coverage stop).
    """
    if check:
        check_consistency(knowledge, environment)
    if fuel is None:
        fuel = default_fuel(environment.n)
    if fuel < 1:
        raise ValueError("fuel must be >= 1")

    ports = environment.ports
    arrival = environment.arrival
    root = environment.root
    remaining = -1
    target: set[int] = set()
    if stop_level is not None:
        if not 1 <= stop_level <= environment.depth:
            raise ValueError(f"stop level {stop_level} outside [1, {environment.depth}]")
        target = {v for v in range(environment.n) if environment.level[v] == stop_level}
        remaining = len(target)

    cur = root
    t = 0
    moves: list[tuple[int, int, int, int]] = []
    first_visit = {root: 0}
    decisions: Optional[list] = [] if record_decisions else None
    obs = Observation(len(ports[root]), None, True)
    gen = strategy.plan(knowledge, obs)
    try:
        port = next(gen)
    except StopIteration:
        return Trace(moves, first_visit, 0, decisions)
    while True:
        nbrs = ports[cur]
        if not isinstance(port, int) or not 0 <= port < len(nbrs):
            raise ProtocolError(
                f"step {t + 1}: strategy chose port {port!r} at a node of degree {len(nbrs)}"
            )
        if decisions is not None:
            decisions.append((obs.degree, obs.entry_port, obs.at_root, port))
        t += 1
        if t > fuel:
            raise FuelError(
                f"fuel {fuel} exhausted", Trace(moves, first_visit, len(moves), decisions)
            )
        nxt = nbrs[port]
        entry = arrival[cur][port]
        moves.append((t, cur, port, nxt))
        cur = nxt
        if cur not in first_visit:
            first_visit[cur] = t
            if remaining > 0 and cur in target:
                remaining -= 1
                if remaining == 0:
                    break
        obs = Observation(len(ports[cur]), entry, cur == root)
        try:
            port = gen.send(obs)
        except StopIteration:
            break
    return Trace(moves, first_visit, len(moves), decisions)


def cost_until_level(trace: Trace, environment: PortTree, d: int) -> int:
    """Earliest time by which every level-d node has been visited.

    This is the worst-case cost for distance d: the adversary hides the
    treasure in the last level-d node the agent reaches.
    """
    if not 1 <= d <= environment.depth:
        raise ValueError(f"level {d} outside [1, {environment.depth}]")
    worst = 0
    for v in range(environment.n):
        if environment.level[v] == d:
            t = trace.first_visit.get(v)
            if t is None:
                raise CoverageError(f"node {v} at level {d} was never visited")
            worst = max(worst, t)
    return worst
