"""Exact counting formulas and their internal cross-checks."""

import math
from fractions import Fraction

import pytest

from unimaps.asymptotics import solve_beta_theta
from unimaps.counting import (
    CountTable,
    conditioned_sum_pmf,
    count_table,
    double_factorial,
    lehman_walsh_count,
    odd_cycle_perm_count,
    odd_partitions,
    partition_count,
    perm_count_for_type,
)
from unimaps.distributions import x_beta_pmf


def test_double_factorial():
    assert [double_factorial(k) for k in (-1, 1, 3, 5, 7)] == [1, 1, 3, 15, 105]
    with pytest.raises(ValueError):
        double_factorial(4)


def test_spot_counts():
    assert lehman_walsh_count(2, 1) == 1
    assert lehman_walsh_count(3, 1) == 10
    assert lehman_walsh_count(4, 2) == 21
    assert lehman_walsh_count(6, 0) == 132
    assert lehman_walsh_count(5, 3) == 0


def test_routes_agree():
    for n in range(1, 13):
        for g in range(n // 2 + 1):
            a = lehman_walsh_count(n, g, method="partition")
            b = lehman_walsh_count(n, g, method="dp")
            assert a == b


def test_total_over_genus_is_gluing_count():
    for n in range(1, 11):
        total = sum(lehman_walsh_count(n, g) for g in range(n // 2 + 1))
        assert total == double_factorial(2 * n - 1)


def test_odd_partitions_exhaustive():
    parts = list(odd_partitions(5, 3))
    assert [p.parts for p in parts] == [(3, 1, 1)]
    assert list(odd_partitions(6, 3)) == []
    assert sum(1 for _ in odd_partitions(9, 3)) == 3


def test_partition_count_prefix():
    assert [partition_count(k) for k in range(8)] == [1, 1, 2, 3, 5, 7, 11, 15]


def test_perm_counts_match_dp():
    # summing the per-type counts over all odd types recovers the recurrence
    for m in range(1, 9):
        for j in range(1, m + 1):
            by_type = sum(perm_count_for_type(p, m) for p in odd_partitions(m, j))
            assert by_type == odd_cycle_perm_count(m, j)


def test_conditioned_sum_values():
    beta = 0.5
    z = math.atanh(beta)
    # brute force over odd triples summing to 5: permutations of (1,1,3)
    want = 3 * (beta / z) ** 2 * (beta**3 / (3 * z))
    got = conditioned_sum_pmf(beta, 3, 5)
    assert math.isclose(float(got), want, rel_tol=1e-4)
    assert conditioned_sum_pmf(beta, 3, 6) == 0
    assert conditioned_sum_pmf(beta, 1, 3) == pytest.approx(x_beta_pmf(beta, 3), rel=1e-4)


def test_count_table_csv():
    table = count_table(range(1, 4))
    text = table.to_csv()
    assert text.splitlines()[0] == "n,g,count"
    assert "3,1,10" in text.splitlines()
    assert isinstance(table, CountTable)
