"""Metrics over runs: worst-case cost, overhead, analytic lower bounds, the
level-scheduler verification, and the penalty-witness experiments.

All ratio arithmetic is exact (fractions.Fraction); decimal rendering belongs
to the presentation edge.  A witness report is a concrete lower-bound pair of
strategies, never a claim about the exact penalty value, which quantifies over
all deterministic algorithms.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from . import generators
from .engine import CoverageError, Trace, cost_until_level, run
from .strategies import (
    Algorithm1,
    DfsToLevel,
    Doubling,
    Incremental,
    OptimalKnown,
    ScheduleTrace,
    SpineWalk,
    blind_schedule,
    make_strategy,
    optimal_known,
)
from .tree import (
    DEFAULT_RELABEL_CAP,
    Knowledge,
    KnowledgeKind,
    LevelProfile,
    PortTree,
    knowledge_for,
    level_counts,
    relabel_count,
    relabelings_exhaustive,
    relabelings_sampled,
)


@dataclass(frozen=True)
class RelabelPolicy:
    """How overhead maximization walks the relabeling family of a blind map:
    exhaustively when the family fits under `cap`, else `samples` seeded
    draws (plus the base labeling)."""

    cap: int = DEFAULT_RELABEL_CAP
    samples: int = 16
    seed: int = 0


@dataclass(frozen=True)
class OverheadReport:
    strategy: str
    kind: KnowledgeKind
    m: int
    value: Fraction
    argmax: Optional[tuple[str, int]]  # (relabeling id, d)
    exact: bool
    sample_count: int = 0
    sample_seed: int = 0

    @property
    def exactness(self) -> str:
        return "exact" if self.exact else f"sampled({self.sample_count},{self.sample_seed})"


def _relabel_family(tree: PortTree, policy: RelabelPolicy):
    """Yields (label, tree) pairs and whether the family is exhaustive."""
    if relabel_count(tree) <= policy.cap:
        def gen():
            for i, t in enumerate(relabelings_exhaustive(tree, policy.cap)):
                yield f"exhaustive:{i}", t
        return gen(), True

    def gen():
        yield "base", tree
        for i, t in enumerate(relabelings_sampled(tree, policy.samples, policy.seed)):
            yield f"sample:{i}", t
    return gen(), False


def overhead(
    strategy: str,
    base_tree: PortTree,
    kind: KnowledgeKind,
    m: int,
    policy: Optional[RelabelPolicy] = None,
    fuel: Optional[int] = None,
) -> OverheadReport:
    """Worst cost/d over the kind's instances with d <= m (0 if none exist).

    Blind kinds range over port relabelings of the base tree; distance kinds
    additionally fix d per run."""
    if m < 1:
        raise ValueError(f"radius must be >= 1, got {m}")
    policy = policy or RelabelPolicy()
    dmax = min(m, base_tree.depth)
    if dmax < 1:
        return OverheadReport(strategy, kind, m, Fraction(0), None, True)
    if kind.is_blind:
        family, exact = _relabel_family(base_tree, policy)
    else:
        family, exact = iter([("base", base_tree)]), True

    best = Fraction(-1)
    argmax = None
    for label, tree in family:
        try:
            if kind.has_distance:
                for d in range(1, dmax + 1):
                    know = knowledge_for(kind, tree, d)
                    trace = run(make_strategy(strategy), know, tree, fuel=fuel, stop_level=d, check=False)
                    ratio = Fraction(cost_until_level(trace, tree, d), d)
                    if ratio > best:
                        best, argmax = ratio, (label, d)
            else:
                know = knowledge_for(kind, tree)
                trace = run(make_strategy(strategy), know, tree, fuel=fuel, check=False)
                for d in range(1, dmax + 1):
                    ratio = Fraction(cost_until_level(trace, tree, d), d)
                    if ratio > best:
                        best, argmax = ratio, (label, d)
        except CoverageError as exc:
            raise CoverageError(f"instance {label}: {exc}") from exc
    return OverheadReport(
        strategy, kind, m, best, argmax, exact,
        0 if exact else policy.samples, 0 if exact else policy.seed,
    )


def lower_bound_no_distance(profile: LevelProfile, m: int) -> Fraction:
    """Overhead floor for every distance-unaware algorithm on this tree:
    max over d <= min(depth, m) of (nodes at levels 1..d)/d."""
    if m < 1:
        raise ValueError(f"radius must be >= 1, got {m}")
    dmax = min(profile.depth, m)
    if dmax < 1:
        return Fraction(0)
    return max(Fraction(profile.upto(d), d) for d in range(1, dmax + 1))


def lower_bound_known_distance(profile: LevelProfile, d: int) -> int:
    """Cost floor for any algorithm, any knowledge: reach level d (d moves)
    and hop between its l_d nodes, pairwise at distance >= 2."""
    if not 1 <= d <= profile.depth:
        raise ValueError(f"level {d} outside [1, {profile.depth}]")
    return 2 * (profile.counts[d] - 1) + d


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    details: str


@dataclass(frozen=True)
class ScheduleCheckReport:
    checks: tuple[CheckResult, ...]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> list[CheckResult]:
        return [c for c in self.checks if not c.passed]


def check_schedule_bound(tree: PortTree, trace: Trace, schedule: ScheduleTrace, d: int) -> ScheduleCheckReport:
    """Verify the scheduler's growth and cost-accumulation guarantees and the
    16x cost bound for the given target level, against a real run."""
    profile = level_counts(tree)
    L = profile.upto
    steps = schedule.steps
    checks: list[CheckResult] = []

    levels = [s.level for s in steps]
    checks.append(CheckResult(
        "levels_strictly_increasing",
        all(a < b for a, b in zip(levels, levels[1:])),
        f"levels={levels}",
    ))

    for i in range(len(steps)):
        expected = (steps[i - 1].cumulative_cost if i else 0) + 2 * L(min(levels[i], profile.depth))
        checks.append(CheckResult(
            f"cumulative_cost[{i}]",
            steps[i].cumulative_cost == expected,
            f"C={steps[i].cumulative_cost} expected={expected}",
        ))

    # growth disjunction, for interior steps whose predecessor took a real branch
    last = len(steps) - 1
    for i in range(1, last):
        prev = steps[i - 1]
        if prev.branch is None:
            continue
        if prev.branch:
            ok = (
                L(levels[i + 1]) >= 4 * L(levels[i - 1])
                and L(levels[i]) < 2 * L(levels[i - 1])
                and L(levels[i + 1]) >= 2 * L(levels[i])
                and steps[i].branch is False
            )
        else:
            ok = L(levels[i]) >= 2 * L(levels[i - 1])
        checks.append(CheckResult(
            f"growth[{i}]", ok,
            f"branch_prev={prev.branch} L_prev={L(levels[i - 1])} L={L(levels[i])}",
        ))

    # cost accumulation: 4x after a non-branch step, 6x after a back-off;
    # a clamped final hop only promises the overall 16x bound
    for i in range(len(steps)):
        prev = steps[i - 1] if i else None
        if prev is not None and prev.clamped:
            continue
        bound = 4 if prev is None or prev.branch is False else 6
        li = L(min(levels[i], profile.depth))
        checks.append(CheckResult(
            f"accumulation[{i}]",
            steps[i].cumulative_cost <= bound * li,
            f"C={steps[i].cumulative_cost} bound={bound}*{li}",
        ))

    if not 1 <= d <= tree.depth:
        raise ValueError(f"level {d} outside [1, {tree.depth}]")
    l_idx = next(i for i, lv in enumerate(levels) if lv >= d)
    budget = 16 * L(d)
    checks.append(CheckResult(
        "schedule_cost_16x",
        steps[l_idx].cumulative_cost <= budget,
        f"C_l={steps[l_idx].cumulative_cost} 16*L={budget}",
    ))
    cost = cost_until_level(trace, tree, d)
    checks.append(CheckResult(
        "run_cost_16x", cost <= budget, f"cost={cost} 16*L={budget}",
    ))
    return ScheduleCheckReport(tuple(checks))


@dataclass(frozen=True)
class PenaltyWitness:
    """A finite witness ratio between a weaker and a stronger knowledge type.

    `ratio` = weak overhead / strong overhead at the same radius; a lower
    bound exhibit, not the exact penalty."""

    family: str
    param: int
    m: int
    weak_kind: KnowledgeKind
    weak_strategy: str
    weak_overhead: Fraction
    strong_kind: KnowledgeKind
    strong_strategy: str
    strong_overhead: Fraction
    ratio: Fraction
    exact: bool


def _worst_cost_fixed_d(
    strategy_name: str,
    kind: KnowledgeKind,
    candidates,
    d: int,
    fuel: Optional[int] = None,
) -> int:
    worst = 0
    for tree in candidates:
        know = knowledge_for(kind, tree, d if kind.has_distance else None)
        trace = run(make_strategy(strategy_name), know, tree, fuel=fuel, stop_level=d, check=False)
        worst = max(worst, cost_until_level(trace, tree, d))
    return worst


def _adversarial_candidates(base_sorted: PortTree, policy: RelabelPolicy):
    """The deliberately worst labeling plus seeded samples; exhaustive instead
    when the whole family fits under the cap."""
    if relabel_count(base_sorted) <= policy.cap:
        return list(relabelings_exhaustive(base_sorted, policy.cap)), True
    cands = [base_sorted]
    cands.extend(relabelings_sampled(base_sorted, policy.samples, policy.seed))
    return cands, False


def penalty_witness_star(n: int, policy: Optional[RelabelPolicy] = None) -> PenaltyWitness:
    """Known distance 2 on the star-with-pendant tree: a blind agent pays 2n
    in the worst labeling, a fully informed one pays 2."""
    if n < 2:
        raise ValueError(f"star witness needs n >= 2, got {n}")
    policy = policy or RelabelPolicy()
    base = generators.gen_star_pendant(n, port_mode="sorted")
    candidates, exact = _adversarial_candidates(base, policy)
    worst = _worst_cost_fixed_d("dfs:2", KnowledgeKind.BLIND_DIST, candidates, 2)
    weak = Fraction(worst, 2)
    strong_cost, _ = optimal_known(base, 2)
    strong = Fraction(strong_cost, 2)
    return PenaltyWitness(
        "star_pendant", n, 2,
        KnowledgeKind.BLIND_DIST, "dfs:2", weak,
        KnowledgeKind.COMPLETE_DIST, "optimal", strong,
        weak / strong, exact,
    )


def penalty_witness_caterpillar(l: int, policy: Optional[RelabelPolicy] = None) -> PenaltyWitness:
    """Unknown distance on the caterpillar: any full explorer pays the whole
    tree to certify the deepest level, while a distance-aware spine walk pays
    at most 5d+4."""
    if l < 2:
        raise ValueError(f"caterpillar witness needs l >= 2, got {l}")
    policy = policy or RelabelPolicy()
    adversarial = generators.gen_caterpillar(l, port_mode="sorted")
    know = knowledge_for(KnowledgeKind.BLIND_NODIST, adversarial)
    trace = run(Algorithm1(), know, adversarial, check=False)
    weak = max(
        Fraction(cost_until_level(trace, adversarial, d), d) for d in range(1, l + 1)
    )
    candidates, exact = _adversarial_candidates(adversarial, policy)
    strong = Fraction(0)
    for d in range(1, l + 1):
        worst = _worst_cost_fixed_d("spine", KnowledgeKind.BLIND_DIST, candidates, d)
        strong = max(strong, Fraction(worst, d))
    return PenaltyWitness(
        "caterpillar", l, l,
        KnowledgeKind.BLIND_NODIST, "algo1", weak,
        KnowledgeKind.BLIND_DIST, "spine", strong,
        weak / strong, exact,
    )


@dataclass(frozen=True)
class DoublingReport:
    """Doubling vs incremental deepening on a full binary tree at the radius
    where doubling overshoots to depth 2m-2."""

    k: int
    m: int
    tree_depth: int
    doubling_overhead: Fraction
    incremental_overhead: Fraction
    floor: Fraction  # 2^(2m-2)/m
    separation: Fraction  # 2^(m-5) * incremental_overhead
    floor_holds: bool
    separation_holds: bool


def penalty_witness_doubling(k: int) -> DoublingReport:
    """Radius m = 2^k+1 on the full binary tree of depth 2m-2 = 2^(k+1)."""
    if k < 1:
        raise ValueError(f"doubling witness needs k >= 1, got {k}")
    m = 2**k + 1
    depth = 2 ** (k + 1)
    tree = generators.gen_full_binary(depth)
    kind = KnowledgeKind.COMPLETE_NODIST

    def measured(strategy) -> Fraction:
        know = knowledge_for(kind, tree)
        trace = run(strategy, know, tree, stop_level=m, check=False, record_decisions=False)
        return max(Fraction(cost_until_level(trace, tree, d), d) for d in range(1, m + 1))

    o_d = measured(Doubling())
    o_a = measured(Incremental())
    floor = Fraction(2 ** (2 * m - 2), m)
    separation = Fraction(2 ** (m - 5)) * o_a if m >= 5 else Fraction(0)
    return DoublingReport(
        k, m, depth, o_d, o_a, floor, separation,
        o_d >= floor, o_d >= separation,
    )
