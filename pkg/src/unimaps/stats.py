"""Small statistics toolkit for comparing empirical and exact laws.

Outcome tables are plain mappings from hashable outcomes to probabilities
or counts; nothing here knows what the outcomes mean.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Hashable, Mapping

import numpy as np
from scipy import stats as sps

__all__ = [
    "OTHER",
    "DistTable",
    "tv_distance",
    "z_scores",
    "ChiSquareResult",
    "chi_square_gof",
]

# bucket label for mass not covered by the listed outcomes
OTHER = "!other"


@dataclass(frozen=True)
class DistTable:
    """Probability table over arbitrary hashable outcomes.

    probs may be Fractions (exact enumeration) or floats (limit laws,
    empirical frequencies).  n_samples is set for empirical tables.
    """

    probs: dict
    n_samples: int | None = None

    def __post_init__(self):
        for v in self.probs.values():
            if v < 0:
                raise ValueError("negative probability")

    @classmethod
    def from_counts(cls, counts: Mapping[Hashable, int], n_samples: int | None = None):
        total = n_samples if n_samples is not None else sum(counts.values())
        if total <= 0:
            raise ValueError("empty count table")
        return cls({k: Fraction(v, total) for k, v in counts.items()}, total)

    def __getitem__(self, key) -> float:
        return self.probs.get(key, 0)

    def total(self) -> float:
        return sum(self.probs.values())

    def as_float(self) -> dict:
        return {k: float(v) for k, v in self.probs.items()}

    def top(self, k: int) -> list:
        return sorted(self.probs, key=lambda o: (-self.probs[o], repr(o)))[:k]


def _probs(table) -> Mapping:
    return table.probs if isinstance(table, DistTable) else table


def tv_distance(p, q) -> float:
    """Total variation (1/2) sum |p - q|, with each table's missing mass
    treated as a private residual outcome.

    Tables need not sum to one: leftover mass on either side counts as its
    own outcome, disjoint from the other side's, which keeps the result a
    true distance on sub-probability tables.
    """
    p, q = _probs(p), _probs(q)
    tot = 0.0
    for k in set(p) | set(q):
        pv, qv = float(p.get(k, 0)), float(q.get(k, 0))
        if pv < 0 or qv < 0:
            raise ValueError("negative probability")
        tot += abs(pv - qv)
    rp = max(0.0, 1.0 - sum(float(v) for v in p.values()))
    rq = max(0.0, 1.0 - sum(float(v) for v in q.values()))
    return 0.5 * (tot + rp + rq)


def z_scores(counts: Mapping, probs: Mapping, n_samples: int) -> dict:
    """Per-outcome binomial z-score of observed count against theory."""
    out = {}
    for k, p in _probs(probs).items():
        p = float(p)
        if not 0.0 < p < 1.0:
            continue
        se = np.sqrt(p * (1.0 - p) / n_samples)
        out[k] = (counts.get(k, 0) / n_samples - p) / se
    return out


@dataclass(frozen=True)
class ChiSquareResult:
    statistic: float
    dof: int
    p_value: float
    buckets: dict = field(compare=False)


def chi_square_gof(counts: Mapping, probs: Mapping, n_samples: int,
                   min_expected: float = 10.0) -> ChiSquareResult:
    """Goodness of fit with sparse outcomes merged into an OTHER bucket.

    Theory buckets with expected count below min_expected are pooled, as is
    all theory mass outside the listed outcomes; observed counts follow the
    same pooling, so the statistic is a valid multinomial chi-square.
    """
    probs = _probs(probs)
    kept = {k: float(p) for k, p in probs.items()
            if float(p) * n_samples >= min_expected}
    other_p = 1.0 - sum(kept.values())
    obs = {k: counts.get(k, 0) for k in kept}
    other_o = n_samples - sum(obs.values())
    buckets = dict(obs)
    exp = {k: p * n_samples for k, p in kept.items()}
    if other_p * n_samples >= min_expected or other_o > 0:
        buckets[OTHER] = other_o
        exp[OTHER] = other_p * n_samples
    stat = 0.0
    for k, e in exp.items():
        if e <= 0:
            if buckets[k] > 0:
                raise ValueError(f"observed outcome {k!r} has zero expected mass")
            continue
        stat += (buckets[k] - e) ** 2 / e
    dof = max(1, len(exp) - 1)
    return ChiSquareResult(stat, dof, float(sps.chi2.sf(stat, dof)), buckets)
