"""Uniform map sampler built from decorated trees."""

import numpy as np
import pytest

from unimaps.sampler import (
    OddCyclePermutationSampler,
    ball_as_tree,
    root_degree,
    sample_c_decorated_tree,
    sample_odd_cycle_permutation,
    sample_unicellular,
)


def test_permutation_sampler_cycle_types():
    rng = np.random.default_rng(0)
    sampler = OddCyclePermutationSampler(7, 3)
    for _ in range(100):
        perm = sampler.sample(rng)
        cycles = perm.cycles()
        assert len(cycles) == 3
        assert all(len(c) % 2 == 1 for c in cycles)


def test_permutation_sampler_identity_case():
    rng = np.random.default_rng(1)
    perm = sample_odd_cycle_permutation(4, 4, rng)
    assert perm.image == (0, 1, 2, 3)


def test_permutation_sampler_rejects_impossible():
    with pytest.raises(ValueError):
        OddCyclePermutationSampler(4, 3)  # parity forbids 3 odd cycles on 4


def test_decorated_tree_invariants():
    rng = np.random.default_rng(2)
    for _ in range(20):
        cdt = sample_c_decorated_tree(6, 1, rng)
        assert cdt.n_edges == 6
        assert cdt.genus == 1
        assert len(cdt.signs) == cdt.n_cycles


def test_sample_sizes_and_root():
    rng = np.random.default_rng(3)
    for n, g in [(5, 0), (6, 1), (8, 3)]:
        for _ in range(10):
            s = sample_unicellular(n, g, rng)
            assert s.genus == g
            assert len(s.graph.edges) == n
            assert s.graph.n_vertices == n + 1 - 2 * g
            assert root_degree(s) >= 1


def test_root_degree_counts_loops_twice():
    rng = np.random.default_rng(4)
    degs = [root_degree(sample_unicellular(2, 1, rng)) for _ in range(30)]
    # the torus map on two edges has a single vertex, degree four
    assert degs == [4] * 30


def test_planar_balls_are_clean_trees():
    rng = np.random.default_rng(5)
    for _ in range(25):
        s = sample_unicellular(7, 0, rng)
        shape = ball_as_tree(s, 2)
        assert shape.is_tree
        assert not shape.merged
        assert shape.plane is not None
        assert shape.plane.height() <= 2
        assert shape.n_nonfixed == 0


def test_one_vertex_torus_ball_is_never_a_tree():
    rng = np.random.default_rng(6)
    for _ in range(20):
        s = sample_unicellular(2, 1, rng)
        shape = ball_as_tree(s, 1)
        assert not shape.is_tree
        assert shape.unordered_code is None


def test_nonfixed_accounting():
    rng = np.random.default_rng(7)
    for _ in range(20):
        s = sample_unicellular(8, 2, rng)
        mask = s.fixed_point_mask
        nonfixed_total = sum(1 for fixed in mask if not fixed)
        shape = ball_as_tree(s, 1)
        assert 0 <= shape.n_nonfixed <= nonfixed_total
        assert shape.n_vertices <= s.graph.n_vertices


def test_determinism_by_seed():
    a = sample_unicellular(9, 2, np.random.default_rng(42))
    b = sample_unicellular(9, 2, np.random.default_rng(42))
    assert a.graph.edges == b.graph.edges
    assert a.source.perm.image == b.source.perm.image
    assert a.source.signs == b.source.signs
