"""Odd-valued step law, branching-tree ball laws, and their samplers."""

import math

import numpy as np
import pytest

from unimaps.asymptotics import solve_beta_theta
from unimaps.distributions import (
    XBetaLaw,
    ball_probability,
    ball_probability_kd,
    extinction_prob,
    gw_ball_probability,
    gw_ball_sample,
    gw_inf_ball_sample,
    inf_ball_generation_sizes,
    root_degree_conv_pmf,
    root_degree_limit_pmf,
    root_degree_pmf_beta,
    size_biased_cycle_pmf,
    x_beta_pmf,
    x_beta_sample,
)
from unimaps.trees import enumerate_plane_trees, plane_code


def test_x_beta_pmf_frozen_and_normalized():
    assert x_beta_pmf(0.5, 1) == pytest.approx(0.9102392266268375, rel=1e-12)
    assert x_beta_pmf(0.5, 2) == 0.0
    total = sum(x_beta_pmf(0.5, v) for v in range(1, 201, 2))
    assert total == pytest.approx(1.0, abs=1e-12)


def test_x_beta_sampling_is_odd_and_centered():
    law = XBetaLaw(solve_beta_theta(0.25))
    rng = np.random.default_rng(5)
    draws = law.sample(rng, size=4000)
    assert np.all(draws % 2 == 1)
    assert float(np.mean(draws)) == pytest.approx(2.0, abs=0.15)
    single = x_beta_sample(0.5, rng)
    assert single % 2 == 1


def test_size_biased_pmf():
    assert size_biased_cycle_pmf(0.5, 3) == pytest.approx(0.1875, rel=1e-12)
    beta = 0.5
    total = sum(size_biased_cycle_pmf(beta, v) for v in range(1, 301, 2))
    assert total == pytest.approx(1.0, abs=1e-10)


def test_root_degree_routes_agree():
    for theta in (0.05, 0.25):
        beta = solve_beta_theta(theta)
        for d in range(1, 12):
            assert root_degree_pmf_beta(beta, d) == pytest.approx(
                root_degree_conv_pmf(beta, d), rel=1e-10)
    total = sum(root_degree_limit_pmf(0.25, d) for d in range(1, 400))
    assert total == pytest.approx(1.0, abs=1e-10)


def test_root_degree_first_two_values_coincide():
    # the two geometric factors have success rates summing to one, which
    # makes the first two pmf values equal
    p1 = root_degree_limit_pmf(0.25, 1)
    p2 = root_degree_limit_pmf(0.25, 2)
    assert p1 == pytest.approx(0.09144139666253231, rel=1e-10)
    assert p2 == pytest.approx(p1, rel=1e-12)


def test_ball_probability_depends_only_on_k_and_d():
    xi = 0.23
    for tree in enumerate_plane_trees(4):
        h = tree.height()
        want = ball_probability_kd(xi, tree.n_edges, tree.count_at_height(h))
        assert ball_probability(xi, tree) == pytest.approx(want, rel=1e-12)


def test_critical_ball_closed_form():
    for k, d in [(1, 1), (3, 2), (5, 1), (4, 4)]:
        want = d * 0.25 ** (k + 1 - d) * 0.5 ** (d - 1)
        assert ball_probability_kd(0.5, k, d) == pytest.approx(want, rel=1e-12)


def test_star_masses_sum_to_one():
    for xi in (0.1, 0.3, 0.5):
        total = sum(ball_probability_kd(xi, d, d) for d in range(1, 4000))
        assert abs(total - 1.0) < 1e-12


def test_extinction_prob():
    assert extinction_prob(0.3) == pytest.approx(0.3 / 0.7, rel=1e-12)
    assert extinction_prob(0.5) == 1.0


def test_gw_ball_sampler_shapes():
    rng = np.random.default_rng(11)
    for _ in range(50):
        t = gw_ball_sample(0.4, 2, rng)
        assert t.height() <= 2
        s = gw_inf_ball_sample(0.4, 2, rng)
        assert s.height() == 2


def test_inf_ball_against_formula_small():
    xi, r, draws = 0.3, 1, 20000
    rng = np.random.default_rng(2)
    counts = {}
    for _ in range(draws):
        code = plane_code(gw_inf_ball_sample(xi, r, rng))
        counts[code] = counts.get(code, 0) + 1
    for d in range(1, 5):
        code = "()" * d
        prob = ball_probability_kd(xi, d, d)
        se = math.sqrt(prob * (1 - prob) / draws)
        assert abs(counts.get(code, 0) / draws - prob) < 4.5 * se


def test_unconditioned_ball_probability():
    # without survival conditioning the law factorizes over edges
    xi = 0.2
    for tree in enumerate_plane_trees(3):
        h = tree.height()
        k, d = tree.n_edges, tree.count_at_height(h)
        want = (1 - xi) ** k * xi ** (k + 1 - d)
        assert gw_ball_probability(xi, tree, h) == pytest.approx(want, rel=1e-12)


def test_generation_sizes_start_at_root():
    rng = np.random.default_rng(8)
    gen = inf_ball_generation_sizes(0.3, 4, rng)
    assert gen[0] == 1
    assert len(gen) == 5
    assert all(g >= 1 for g in gen)
