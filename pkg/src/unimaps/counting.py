"""Exact counts of one-face maps and of odd-cycle permutations.

The number of one-face maps with n edges and genus g is

    catalan(n) * 2^s / 2^(n+1) * sum over partitions of n+1 into
    s = n+1-2g odd parts of (n+1)! / prod(m_i! * i^m_i)

(Lehman-Walsh form), where the sum counts permutations of n+1 symbols
whose cycle type is the partition.  Everything here is exact integer or
rational arithmetic; the only floats are the optional high-precision
convolution path of conditioned_sum_pmf.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .trees import catalan

#: below this target sum the conditioned-sum convolution runs in exact
#: rational arithmetic; above it, 80-bit-or-better floats
EXACT_SUM_LIMIT = 200


def double_factorial(k: int) -> int:
    """k!! for odd k >= -1; (2n-1)!! counts the gluings of a 2n-gon."""
    if k < -1 or k % 2 == 0:
        raise ValueError("k must be odd and >= -1")
    out = 1
    while k > 1:
        out *= k
        k -= 2
    return out


@dataclass(frozen=True)
class OddPartition:
    """Partition of ``total`` into odd parts, stored in decreasing order."""

    parts: tuple[int, ...]

    def __post_init__(self):
        if any(p <= 0 or p % 2 == 0 for p in self.parts):
            raise ValueError("parts must be positive odd integers")
        if list(self.parts) != sorted(self.parts, reverse=True):
            raise ValueError("parts must be in decreasing order")

    @property
    def total(self) -> int:
        return sum(self.parts)

    @property
    def length(self) -> int:
        return len(self.parts)

    def multiplicities(self) -> dict[int, int]:
        mult: dict[int, int] = {}
        for p in self.parts:
            mult[p] = mult.get(p, 0) + 1
        return mult


def odd_partitions(total: int, s: int):
    """Yield all partitions of ``total`` into exactly ``s`` odd parts.

    Empty unless s <= total and total == s (mod 2).  Subtracting one from
    every part and halving gives a partition of (total-s)/2 into at most
    s parts, so the number of results is p_{<=s}((total-s)/2).
    """
    if s < 0 or total < 0:
        raise ValueError("total and s must be >= 0")
    if s == 0:
        if total == 0:
            yield OddPartition(())
        return
    if total < s or (total - s) % 2 != 0:
        return

    def gen(remaining, k, maxpart):
        if k == 1:
            if remaining <= maxpart and remaining % 2 == 1:
                yield (remaining,)
            return
        p = min(maxpart, remaining - (k - 1))
        if p % 2 == 0:
            p -= 1
        while p >= 1 and p * k >= remaining:
            for rest in gen(remaining - p, k - 1, p):
                yield (p,) + rest
            p -= 2

    for parts in gen(total, s, total):
        yield OddPartition(parts)


@lru_cache(maxsize=None)
def partition_count(k: int) -> int:
    """Number of partitions of k, by Euler's pentagonal recurrence."""
    if k < 0:
        return 0
    if k == 0:
        return 1
    total = 0
    j = 1
    while True:
        g1 = j * (3 * j - 1) // 2
        g2 = j * (3 * j + 1) // 2
        if g1 > k and g2 > k:
            break
        sign = 1 if j % 2 == 1 else -1
        if g1 <= k:
            total += sign * partition_count(k - g1)
        if g2 <= k:
            total += sign * partition_count(k - g2)
        j += 1
    return total


def perm_count_for_type(partition: OddPartition, m: int) -> int:
    """Number of permutations of m symbols with the given cycle type:
    m! / prod over part sizes i of (m_i! * i^m_i)."""
    if partition.total != m:
        raise ValueError("partition must sum to m")
    denom = 1
    for i, mi in partition.multiplicities().items():
        denom *= math.factorial(mi) * i**mi
    q, r = divmod(math.factorial(m), denom)
    assert r == 0
    return q


@lru_cache(maxsize=None)
def odd_cycle_perm_count(m: int, j: int) -> int:
    """Permutations of m symbols with exactly j cycles, all of odd length.

    Recurrence on the cycle containing the first symbol: choosing its
    k-1 companions and one of (k-1)! cyclic arrangements gives

        a(m, j) = sum over odd k of C(m-1, k-1) (k-1)! a(m-k, j-1).
    """
    if m < 0 or j < 0:
        raise ValueError("m and j must be >= 0")
    if m == 0:
        return 1 if j == 0 else 0
    if j == 0:
        return 0
    total = 0
    for k in range(1, m - j + 2, 2):
        total += math.comb(m - 1, k - 1) * math.factorial(k - 1) * odd_cycle_perm_count(m - k, j - 1)
    return total


def lehman_walsh_count(n: int, g: int, method: str = "auto") -> int:
    """Exact number of one-face maps with n edges and genus g.

    method 'partition' sums perm_count_for_type over odd_partitions,
    'dp' uses the odd_cycle_perm_count recurrence, and 'auto' picks the
    partition route when p(g) stays under a million partitions.  Both
    routes divide catalan(n) * #perms by 4^g, which must be exact.
    """
    if n < 0 or g < 0:
        raise ValueError("n and g must be >= 0")
    s = n + 1 - 2 * g
    if s <= 0:
        return 0
    if method == "auto":
        method = "partition" if partition_count(g) < 10**6 else "dp"
    if method == "partition":
        perms = sum(perm_count_for_type(p, n + 1) for p in odd_partitions(n + 1, s))
    elif method == "dp":
        perms = odd_cycle_perm_count(n + 1, s)
    else:
        raise ValueError(f"unknown method {method!r}")
    q, r = divmod(catalan(n) * perms, 4**g)
    assert r == 0, "count must be an integer"
    return q


@dataclass
class CountTable:
    """Rows (n, g, count) with CSV export; counts as decimal strings."""

    rows: list[tuple[int, int, int]]

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["n", "g", "count"])
        for n, g, c in self.rows:
            w.writerow([n, g, str(c)])
        return buf.getvalue()


def count_table(n_range, g_range=None) -> CountTable:
    rows = []
    for n in n_range:
        gs = g_range if g_range is not None else range(n // 2 + 1)
        for g in gs:
            if n + 1 - 2 * g > 0:
                rows.append((n, g, lehman_walsh_count(n, g)))
    return CountTable(rows)


def _odd_weight_poly_exact(beta: Fraction, total: int) -> list[Fraction]:
    w = [Fraction(0)] * (total + 1)
    bk = beta
    b2 = beta * beta
    for k in range(1, total + 1, 2):
        w[k] = bk / k
        bk *= b2
    return w


def _poly_mul_trunc(a, b, cap, zero):
    out = [zero] * (cap + 1)
    for i, ai in enumerate(a):
        if ai == zero:
            continue
        top = min(cap - i, len(b) - 1)
        for j in range(top + 1):
            if b[j] != zero:
                out[i + j] = out[i + j] + ai * b[j]
    return out


def conditioned_sum_pmf(beta: float, s: int, total: int):
    """P(X_1 + ... + X_s = total) for i.i.d. odd-valued X with
    P(X = k) = beta^k / (Z k), Z = arctanh(beta).

    Zero off the lattice total >= s, total == s (mod 2).  Exact rational
    convolution up to total <= EXACT_SUM_LIMIT (exact in the binary
    values of beta and Z); extended-precision float convolution above.
    """
    if not (0 < beta < 1):
        raise ValueError("beta must be in (0, 1)")
    if s <= 0:
        raise ValueError("s must be >= 1")
    if total < s or (total - s) % 2 != 0:
        return Fraction(0) if total <= EXACT_SUM_LIMIT else 0.0
    z = math.atanh(beta)
    if total <= EXACT_SUM_LIMIT:
        fb = Fraction(beta)
        w = _odd_weight_poly_exact(fb, total)
        # w^s truncated at degree `total` by binary powering
        acc = None
        base = w
        e = s
        zero = Fraction(0)
        while e:
            if e & 1:
                acc = base if acc is None else _poly_mul_trunc(acc, base, total, zero)
            e >>= 1
            if e:
                base = _poly_mul_trunc(base, base, total, zero)
        return acc[total] / Fraction(z) ** s
    # float path: numpy convolutions in 80-bit-or-better precision
    w = np.zeros(total + 1, dtype=np.longdouble)
    ks = np.arange(1, total + 1, 2)
    logw = ks * np.longdouble(math.log(beta)) - np.log(ks.astype(np.longdouble))
    w[ks] = np.exp(logw - np.longdouble(math.log(z)))
    acc = None
    base = w
    e = s
    while e:
        if e & 1:
            acc = base.copy() if acc is None else np.convolve(acc, base)[: total + 1]
        e >>= 1
        if e:
            base = np.convolve(base, base)[: total + 1]
    return float(acc[total])


class ConditionedSumTable:
    """Renormalized laws of prefix sums S_j = X_1 + ... + X_j given beta.

    Row j holds P(S_j = t) for t = 0..total in extended precision, each
    row rescaled to sum to one; the ratios drive the sequential
    conditioned sampler in :mod:`unimaps.sampler`.
    """

    def __init__(self, beta: float, s: int, total: int):
        if not (0 < beta < 1):
            raise ValueError("beta must be in (0, 1)")
        z = math.atanh(beta)
        cap = total - s + 1  # largest part usable given s parts summing to total
        pmf = np.zeros(total + 1, dtype=np.longdouble)
        ks = np.arange(1, max(cap, 1) + 1, 2)
        pmf[ks] = np.exp(
            ks * np.longdouble(math.log(beta))
            - np.log(ks.astype(np.longdouble))
            - np.longdouble(math.log(z))
        )
        rows = [None] * (s + 1)
        row = np.zeros(total + 1, dtype=np.longdouble)
        row[0] = 1.0
        rows[0] = row
        for j in range(1, s + 1):
            row = np.convolve(row, pmf)[: total + 1]
            t = row.sum()
            if t > 0:
                row = row / t
            rows[j] = row
        self.beta = beta
        self.s = s
        self.total = total
        self.pmf = pmf
        self.rows = rows
