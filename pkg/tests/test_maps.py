"""Rotation systems, polygon gluings, and ball extraction on them."""

import pytest

from unimaps.maps import (
    Permutation,
    RotationMap,
    faces_and_genus,
    plane_tree_to_map,
    rotation_ball_code,
    unfolding_ball_code,
)
from unimaps.oracle import enumerate_unicellular
from unimaps.counting import double_factorial
from unimaps.trees import enumerate_plane_trees, plane_code


def test_permutation_basics():
    p = Permutation((1, 2, 0, 4, 3))
    assert len(p) == 5
    assert p(0) == 1
    assert p.cycle_type() == (3, 2)
    assert p.fixed_points() == []
    assert not p.has_all_odd_cycles()
    assert Permutation((1, 2, 0)).has_all_odd_cycles()
    with pytest.raises(ValueError):
        Permutation((0, 0, 1))


def test_tree_maps_are_planar_and_one_faced():
    for n in range(1, 6):
        for tree in enumerate_plane_trees(n):
            m = plane_tree_to_map(tree)
            faces, genus = faces_and_genus(m.alpha, m.sigma)
            assert (faces, genus) == (1, 0)


def test_gluing_enumeration_count():
    for n in range(1, 6):
        maps = list(enumerate_unicellular(n))
        assert len(maps) == double_factorial(2 * n - 1)
        for m in maps:
            assert isinstance(m, RotationMap)


def test_ball_code_of_tree_map_is_the_tree():
    # with no cycles in sight the two ball notions agree with the tree itself
    for tree in enumerate_plane_trees(4):
        m = plane_tree_to_map(tree)
        is_tree, code = rotation_ball_code(m, 10)
        assert is_tree
        assert code == plane_code(tree)
        assert unfolding_ball_code(m, 10) == plane_code(tree)


def test_ball_codes_on_the_one_edge_loop():
    # one vertex, one loop: the subgraph ball sees a cycle, the exploration
    # view walks through the loop once from each side
    loop = RotationMap(alpha=(1, 0), sigma=(1, 0), root_dart=0)
    is_tree, code = rotation_ball_code(loop, 1)
    assert not is_tree
    assert code is None
    assert unfolding_ball_code(loop, 1) == "()()"


def test_unfolding_radius_zero_is_empty():
    chain = plane_tree_to_map(next(iter(enumerate_plane_trees(3))))
    assert unfolding_ball_code(chain, 0) == ""


def test_root_degree_via_rotation():
    for tree in enumerate_plane_trees(3):
        m = plane_tree_to_map(tree)
        assert m.root_degree() == tree.degrees()[0]
