"""Brute-force oracles: cover-walk search, isomorphism, shape catalog."""

import pytest

from tests.conftest import random_trees
from treehunt.generators import (
    TreeBuilder,
    gen_caterpillar,
    gen_full_binary,
    gen_path,
    gen_star_pendant,
)
from treehunt.oracle import (
    MAX_COVER_TARGETS,
    ROOTED_SHAPE_COUNTS,
    iso_check,
    min_cover_walk,
    shape_catalog,
)
from treehunt.strategies import optimal_known
from treehunt.tree import blind_code, level_counts, relabelings_sampled, validate


class TestMinCoverWalk:
    def test_single_target(self):
        t = gen_path(5)
        cost, walk = min_cover_walk(t, t.nodes_at_level(5))
        assert cost == 5
        assert len(walk) == 6 and walk[0] == t.root

    def test_root_target_is_free(self):
        t = gen_path(3)
        cost, walk = min_cover_walk(t, [t.root])
        assert cost == 0 and walk == [t.root]

    def test_walk_is_connected_and_covers(self):
        t = gen_full_binary(3, seed=4)
        targets = t.nodes_at_level(2)
        cost, walk = min_cover_walk(t, targets)
        assert len(walk) == cost + 1
        for a, b in zip(walk, walk[1:]):
            assert b in t.ports[a]
        assert set(targets) <= set(walk)

    def test_star_level1(self):
        t = gen_star_pendant(4, port_mode="sorted")
        cost, _ = min_cover_walk(t, t.nodes_at_level(1))
        assert cost == 2 * 4 - 1

    def test_matches_planner(self):
        t = gen_full_binary(3, seed=8)
        for d in range(1, 4):
            assert min_cover_walk(t, t.nodes_at_level(d))[0] == optimal_known(t, d)[0]

    def test_target_cap(self):
        t = gen_full_binary(5)
        with pytest.raises(ValueError):
            min_cover_walk(t, t.nodes_at_level(5))
        assert len(t.nodes_at_level(5)) > MAX_COVER_TARGETS


class TestIsoCheck:
    def test_relabelings_are_isomorphic(self):
        t = gen_caterpillar(4, seed=3)
        for r in relabelings_sampled(t, 3, seed=5):
            assert iso_check(t, r)

    def test_different_shapes_are_not(self):
        assert not iso_check(gen_path(3), gen_full_binary(2))

    def test_root_position_matters(self):
        # a path rooted at an end vs "rooted" structure that differs only at
        # the root: same underlying tree shape, different rooted shape
        b = TreeBuilder()
        mid = b.add_child(0)
        b.add_child(mid)
        centered = TreeBuilder()
        centered.add_child(0)
        centered.add_child(0)
        assert not iso_check(b.build(), centered.build())

    def test_size_mismatch(self):
        assert not iso_check(gen_path(2), gen_path(3))

    def test_size_cap(self):
        big = gen_path(1200)
        with pytest.raises(ValueError):
            iso_check(big, big)

    def test_agrees_with_code_on_random_pairs(self):
        trees = random_trees(12, seed=31, max_nodes=14)
        for a in trees:
            for b in trees:
                assert iso_check(a, b) == (blind_code(a).code == blind_code(b).code)


class TestShapeCatalog:
    def test_counts_match_known_sequence(self):
        catalog = shape_catalog(8)
        assert len(catalog) == sum(ROOTED_SHAPE_COUNTS)
        by_size = {}
        for t in catalog:
            by_size[t.n] = by_size.get(t.n, 0) + 1
        assert tuple(by_size[n] for n in range(1, 9)) == ROOTED_SHAPE_COUNTS

    def test_all_valid_and_distinct(self):
        catalog = shape_catalog(6)
        codes = set()
        for t in catalog:
            assert validate(t) == []
            codes.add(blind_code(t).code)
        assert len(codes) == len(catalog)

    def test_unknown_size_refused(self):
        with pytest.raises(ValueError):
            shape_catalog(9)
