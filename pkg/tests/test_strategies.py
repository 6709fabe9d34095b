"""Strategies: the level scheduler, sweeps, doubling, the spine walk and the
exact planner.  Frozen cost values are certified against the independent
reference walker in conftest."""

import pytest

from tests.conftest import reference_cost, reference_sweep
from treehunt.engine import cost_until_level, run
from treehunt.generators import (
    gen_backoff,
    gen_caterpillar,
    gen_full_binary,
    gen_path,
    gen_star_pendant,
)
from treehunt.strategies import (
    Algorithm1,
    DfsToLevel,
    Doubling,
    Incremental,
    OptimalKnown,
    SpineWalk,
    blind_schedule,
    make_strategy,
    optimal_known,
)
from treehunt.tree import KnowledgeKind, blind_code, knowledge_for, level_counts


def _know(kind, tree, d=None):
    return knowledge_for(kind, tree, d)


BLIND = KnowledgeKind.BLIND_NODIST


class TestBlindSchedule:
    def test_path8(self):
        sched = blind_schedule(level_counts(gen_path(8)))
        assert sched.levels == (1, 2, 4, 8)
        assert [s.branch for s in sched.steps] == [False, False, False, None]
        assert [s.cumulative_cost for s in sched.steps] == [2, 6, 14, 30]

    def test_full_binary4(self):
        sched = blind_schedule(level_counts(gen_full_binary(4)))
        assert sched.levels == (1, 2, 3, 4)
        assert [s.cumulative_cost for s in sched.steps] == [4, 16, 44, 104]

    def test_backoff_takes_the_back_step(self):
        sched = blind_schedule(level_counts(gen_backoff(9)))
        assert sched.levels == (1, 2, 3)
        assert [s.branch for s in sched.steps] == [True, False, None]
        assert [s.threshold for s in sched.steps] == [3, 3, None]

    def test_thresholds_are_minimal(self):
        sched = blind_schedule(level_counts(gen_full_binary(5)))
        profile = level_counts(gen_full_binary(5))
        for step in sched.steps:
            if step.threshold is None:
                continue
            k = step.threshold
            assert profile.cumulative(step.level + 1, k) >= profile.upto(step.level)
            if k > step.level + 1:
                assert profile.cumulative(step.level + 1, k - 1) < profile.upto(step.level)

    def test_clamp_when_no_threshold_level_exists(self):
        # one long level-1 fan after a narrow top: nodes below level 1 never
        # accumulate enough to reach the threshold
        from treehunt.tree import LevelProfile

        sched = blind_schedule(LevelProfile((1, 10, 1, 1)))
        assert sched.levels == (1, 3)
        assert sched.steps[0].clamped
        assert sched.steps[-1].level == 3

    def test_depth_cap(self):
        sched = blind_schedule(level_counts(gen_path(8)), depth_cap=3)
        assert sched.levels[-1] >= 3
        assert all(s.level <= 4 for s in sched.steps)

    def test_levels_strictly_increasing_everywhere(self):
        for tree in (gen_path(20), gen_full_binary(6), gen_caterpillar(12), gen_backoff(33)):
            levels = blind_schedule(level_counts(tree)).levels
            assert all(a < b for a, b in zip(levels, levels[1:]))
            assert levels[-1] == tree.depth


class TestDfsSweep:
    def test_star_costs(self):
        t = gen_star_pendant(3, port_mode="sorted")
        trace = run(DfsToLevel(1), _know(BLIND, t), t)
        assert trace.total_moves == 6
        assert cost_until_level(trace, t, 1) == 5

    def test_total_is_twice_level_prefix(self):
        for tree in (gen_caterpillar(6), gen_full_binary(4), gen_backoff(9)):
            profile = level_counts(tree)
            for h in range(1, tree.depth + 1):
                trace = run(DfsToLevel(h), _know(BLIND, tree), tree)
                assert trace.total_moves == 2 * profile.upto(h)

    def test_matches_reference_walker(self):
        t = gen_caterpillar(5, seed=42)
        trace = run(DfsToLevel(3), _know(BLIND, t), t)
        assert [m[3] for m in trace.moves] == reference_sweep(t, 3)

    def test_rejects_bad_level(self):
        with pytest.raises(ValueError):
            DfsToLevel(0)


class TestAlgorithm1:
    def test_path8_known_cost(self):
        t = gen_path(8)
        trace = run(Algorithm1(), _know(BLIND, t), t)
        assert cost_until_level(trace, t, 5) == 19
        assert trace.total_moves == 30

    def test_follows_its_schedule(self):
        t = gen_full_binary(4, seed=9)
        sched = blind_schedule(level_counts(t))
        trace = run(Algorithm1(), _know(BLIND, t), t)
        assert trace.total_moves == sched.steps[-1].cumulative_cost
        walks = [reference_sweep(t, s.level) for s in sched.steps]
        assert [m[3] for m in trace.moves] == [v for w in walks for v in w]

    def test_ignores_ports_in_complete_map(self):
        t = gen_backoff(9, seed=3)
        a = run(Algorithm1(), _know(BLIND, t), t)
        b = run(Algorithm1(), _know(KnowledgeKind.COMPLETE_NODIST, t), t)
        assert a.moves == b.moves


class TestDoublingAndIncremental:
    def test_doubling_frozen_value(self):
        # certified twice: engine run and reference walker composition
        t = gen_full_binary(4, port_mode="sorted")
        trace = run(Doubling(), _know(KnowledgeKind.COMPLETE_NODIST, t), t)
        assert cost_until_level(trace, t, 3) == 65
        assert trace.total_moves == 72
        walks = [reference_sweep(t, 2), reference_sweep(t, 4)]
        assert reference_cost(walks, t, 3) == 65

    def test_doubling_sweep_levels(self):
        t = gen_path(5)
        trace = run(Doubling(), _know(KnowledgeKind.COMPLETE_NODIST, t), t)
        # sweeps at 2, 4, 8 (8 capped by the tree: DFS below depth just stops)
        assert trace.total_moves == 2 * 2 + 2 * 4 + 2 * 5

    def test_incremental_total(self):
        t = gen_path(4)
        trace = run(Incremental(), _know(KnowledgeKind.COMPLETE_NODIST, t), t)
        assert trace.total_moves == sum(2 * h for h in range(1, 5))

    def test_doubling_path_d4(self):
        t = gen_path(4)
        trace = run(Doubling(), _know(KnowledgeKind.COMPLETE_NODIST, t), t)
        assert cost_until_level(trace, t, 4) == 8  # sweep 2 (4 moves) + descend 4


class TestSpineWalk:
    @pytest.mark.parametrize("l", [2, 5, 10, 20])
    def test_bound_5d_plus_4(self, l):
        t = gen_caterpillar(l, port_mode="sorted")
        for d in range(1, l + 1):
            know = _know(KnowledgeKind.BLIND_DIST, t, d)
            trace = run(SpineWalk(), know, t, stop_level=d)
            cost = cost_until_level(trace, t, d)
            assert d <= cost <= 5 * d + 4

    def test_d1_probes_both_children(self):
        t = gen_caterpillar(4)
        trace = run(SpineWalk(), _know(KnowledgeKind.BLIND_DIST, t, 1), t, stop_level=1)
        assert cost_until_level(trace, t, 1) == 3

    def test_rejects_non_caterpillar(self):
        t = gen_path(4)
        with pytest.raises(ValueError):
            run(SpineWalk(), _know(KnowledgeKind.BLIND_DIST, t, 2), t)

    def test_needs_distance(self):
        t = gen_caterpillar(4)
        with pytest.raises(ValueError):
            run(SpineWalk(), _know(BLIND, t), t)


class TestOptimalKnown:
    def test_path(self):
        t = gen_path(6)
        for d in range(1, 7):
            cost, walk = optimal_known(t, d)
            assert cost == d == len(walk)

    def test_star_pendant(self):
        t = gen_star_pendant(5, port_mode="sorted")
        cost, _ = optimal_known(t, 2)
        assert cost == 2
        cost1, _ = optimal_known(t, 1)
        assert cost1 == 2 * 5 - 1  # visit all 5 children, skip the last ascent

    def test_walk_realizes_cost(self):
        t = gen_full_binary(3, seed=7)
        for d in range(1, 4):
            cost, walk = optimal_known(t, d)
            assert len(walk) == cost
            know = _know(KnowledgeKind.COMPLETE_DIST, t, d)
            trace = run(OptimalKnown(), know, t)
            assert trace.total_moves == cost
            assert cost_until_level(trace, t, d) == cost

    def test_level_range_checked(self):
        with pytest.raises(ValueError):
            optimal_known(gen_path(3), 4)

    def test_requires_complete_dist(self):
        t = gen_path(3)
        with pytest.raises(ValueError):
            run(OptimalKnown(), _know(KnowledgeKind.COMPLETE_NODIST, t), t)


class TestMakeStrategy:
    def test_names(self):
        assert make_strategy("dfs:3").h == 3
        assert isinstance(make_strategy("algo1"), Algorithm1)
        assert isinstance(make_strategy("doubling"), Doubling)
        assert isinstance(make_strategy("incremental"), Incremental)
        assert isinstance(make_strategy("spine"), SpineWalk)
        assert isinstance(make_strategy("optimal"), OptimalKnown)

    def test_unknown(self):
        with pytest.raises(ValueError):
            make_strategy("teleport")

    def test_fresh_instances(self):
        assert make_strategy("algo1") is not make_strategy("algo1")
