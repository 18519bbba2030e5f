"""Seeded statistical experiments against the limit laws.

Each run samples one-face maps, reduces them to a local observable
(root degree, radius-r ball), and compares empirical frequencies with
the corresponding limit formula.  Reports are plain data with a
reproducibility header; identical config and seed give byte-identical
output.

Two comparison granularities coexist for balls.  The plane-level rows
need every ball vertex to be a fixed point of the decoration, which at
large theta almost never happens, so the shape-level rows aggregate the
limit law over all plane orderings of each unordered ball and stay
informative at any theta.
"""

from __future__ import annotations

import csv
import io
import json
import math
import subprocess
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path

import numpy as np

from . import __version__
from .asymptotics import solve_beta_theta
from .distributions import (
    ball_probability,
    ball_probability_kd,
    inf_ball_generation_sizes,
    root_degree_limit_pmf,
)
from .sampler import ball_as_tree, root_degree, sample_unicellular
from .trees import parse_plane_code, plane_code, plane_embeddings_count

NON_TREE = "!nontree"
MERGED = "!merged"
SHALLOW = "!shallow"


@dataclass(frozen=True)
class ExperimentConfig:
    """Sampling parameters shared by the experiment drivers."""

    n: int
    g: int
    r: int = 1
    samples: int = 10_000
    seed: int = 0
    workers: int = 1
    out: str | None = None
    fmt: str = "csv"

    def __post_init__(self):
        if not (0 <= 2 * self.g <= self.n):
            raise ValueError("need 0 <= 2g <= n")
        if self.r < 0:
            raise ValueError("radius must be >= 0")
        if self.samples < 1:
            raise ValueError("need at least one sample")
        if self.workers < 1:
            raise ValueError("need at least one worker")
        if not (0 <= self.seed < 2**64):
            raise ValueError("seed must fit in 64 unsigned bits")
        if self.fmt not in ("csv", "json"):
            raise ValueError("format must be csv or json")

    @property
    def theta(self) -> float:
        return self.g / self.n


@dataclass(frozen=True)
class ReportRow:
    section: str
    outcome: str
    observed: float
    expected: float
    std_err: float
    z: float


@dataclass(frozen=True)
class ComparisonReport:
    """Empirical-versus-theory table plus the context to rerun it.

    masses hold probability leftovers that are reported rather than
    matched per outcome (non-tree balls, unrecoverable plane structure).
    tv carries one total-variation figure per section.  scored lists the
    sections whose rows drive the pass flag; the others are informative.
    """

    kind: str
    params: tuple[tuple[str, object], ...]
    constants: tuple[tuple[str, object], ...]
    rows: tuple[ReportRow, ...]
    tv: tuple[tuple[str, float], ...]
    masses: tuple[tuple[str, float], ...]
    passed: bool
    scored: tuple[str, ...] = ()

    def section_rows(self, section: str) -> tuple[ReportRow, ...]:
        return tuple(row for row in self.rows if row.section == section)

    def mass(self, name: str) -> float:
        for key, value in self.masses:
            if key == name:
                return value
        raise KeyError(name)

    def tv_of(self, section: str) -> float:
        for key, value in self.tv:
            if key == section:
                return value
        raise KeyError(section)

    def to_json(self) -> str:
        obj = {
            "kind": self.kind,
            "params": dict(self.params),
            "constants": dict(self.constants),
            "rows": [
                {
                    "section": row.section,
                    "outcome": row.outcome,
                    "observed": row.observed,
                    "expected": row.expected,
                    "std_err": row.std_err,
                    "z": row.z,
                }
                for row in self.rows
            ],
            "tv": dict(self.tv),
            "masses": dict(self.masses),
            "passed": self.passed,
            "scored": list(self.scored),
        }
        return json.dumps(obj, sort_keys=True, indent=2) + "\n"

    def to_csv(self) -> str:
        buf = io.StringIO()
        for key, value in (("kind", self.kind),) + self.params + self.constants:
            buf.write(f"# {key}={value}\n")
        for key, value in self.tv:
            buf.write(f"# tv.{key}={value}\n")
        for key, value in self.masses:
            buf.write(f"# mass.{key}={value}\n")
        buf.write(f"# scored={','.join(self.scored)}\n")
        buf.write(f"# passed={self.passed}\n")
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["section", "outcome", "observed", "expected", "std_err", "z"])
        for row in self.rows:
            writer.writerow(
                [row.section, row.outcome, row.observed, row.expected, row.std_err, row.z]
            )
        return buf.getvalue()

    def render(self, fmt: str) -> str:
        if fmt == "json":
            return self.to_json()
        if fmt == "csv":
            return self.to_csv()
        raise ValueError("format must be csv or json")

    def write(self, path: str | Path, fmt: str = "csv") -> None:
        Path(path).write_text(self.render(fmt))


@lru_cache(maxsize=1)
def build_id() -> str:
    """Source identifier embedded in every report."""
    root = Path(__file__).resolve().parent.parent.parent
    try:
        out = subprocess.run(
            ["git", "-C", str(root), "describe", "--always", "--dirty"],
            capture_output=True,
            text=True,
            timeout=10,
        )
        if out.returncode == 0 and out.stdout.strip():
            return out.stdout.strip()
    except OSError:
        pass
    return f"unimaps-{__version__}"


def _resolve_constants(theta: float, xi: float | None) -> tuple[float, float, float]:
    """(beta, xi, z_beta) for a run; xi may be forced, e.g. to 1/2."""
    if xi is None:
        beta = solve_beta_theta(theta)
        xi = (1.0 - beta) / 2.0
    else:
        beta = 1.0 - 2.0 * xi
    z_beta = math.atanh(beta) if beta > 0 else 0.0
    return beta, xi, z_beta


def _chunks(total: int, workers: int) -> list[int]:
    base, extra = divmod(total, workers)
    return [base + (1 if i < extra else 0) for i in range(workers)]


def _fanout(cfg: ExperimentConfig, worker):
    """Run worker(rng, count) per seed stream and merge the Counters.

    Workers own disjoint child streams of the config seed, so the merged
    counts depend only on (seed, workers), not on execution order.
    """
    streams = np.random.SeedSequence(cfg.seed).spawn(cfg.workers)
    merged: dict = {}
    for stream, count in zip(streams, _chunks(cfg.samples, cfg.workers)):
        if count == 0:
            continue
        part = worker(np.random.default_rng(stream), count)
        for key, counter in part.items():
            if key in merged:
                merged[key].update(counter)
            else:
                merged[key] = counter
    return merged


def _binomial_row(section: str, outcome: str, count: int, prob: float,
                  n_samples: int) -> ReportRow:
    freq = count / n_samples
    se = math.sqrt(prob * (1.0 - prob) / n_samples)
    if se > 0:
        z = (freq - prob) / se
    else:
        z = 0.0 if freq == prob else math.copysign(math.inf, freq - prob)
    return ReportRow(section, outcome, freq, prob, se, z)


def _section_tv(counts: Counter, probs: dict, n_samples: int) -> float:
    """TV between the empirical table and the theory table.

    Outcomes absent from one side count their full mass: theory mass not
    observed and special empirical outcomes both push the distance up.
    """
    keys = set(counts) | set(probs)
    total = 0.0
    for key in keys:
        total += abs(counts.get(key, 0) / n_samples - probs.get(key, 0.0))
    emp_residual = 1.0 - sum(counts.values()) / n_samples
    theory_residual = 1.0 - sum(probs.values())
    return 0.5 * (total + abs(emp_residual) + abs(theory_residual))


def _shape_stats(code: str) -> tuple[int, int, int, int]:
    """(k, height, d, embeddings) of an unordered ball code."""
    rep = parse_plane_code(code)
    height = rep.height()
    return rep.n_edges, height, rep.count_at_height(height), plane_embeddings_count(rep)


def _height2_tree_count(k: int, d: int) -> int:
    """Plane trees with k edges, height exactly 2, d vertices at height 2.

    The root has k-d children carrying d grandchildren between them in
    some composition, hence a single binomial coefficient.
    """
    j = k - d
    if d < 1 or j < 1:
        return 0
    return math.comb(d + j - 1, j - 1)


def run_local_limit(cfg: ExperimentConfig, radii: tuple[int, ...] | None = None,
                    xi: float | None = None, z_max: float = 4.0,
                    min_expected: float = 50.0, top_m: int = 10) -> ComparisonReport:
    """Sampled radius-r balls against the limit ball law.

    One sampling pass serves every radius.  Observed values are raw
    frequencies over all samples; the local limit is a per-outcome
    statement, so each fixed ball keeps its own limit probability while
    the finite-size leftovers (cycles through the ball, unrecoverable
    plane order) sit on outcomes outside the table and are reported as
    masses.  Plane-level rows compare ordered balls, which at radius 1
    every tree ball determines; deeper radii recover plane order only
    when the ball misses every merged vertex, so at large theta those
    rows go unscored and the unordered rows carry the check.  Shape rows
    aggregate the law over plane orderings; at radius 2 a pooled section
    over (edge count, deepest population) adds resolution where single
    shapes get rare.

    The pass flag looks at scored sections only, and within them at the
    top_m outcomes by limit probability whose expected count reaches
    min_expected.  Rare-outcome tails converge slower than any fixed
    z threshold at fixed n, so scoring the head is what a finite run can
    actually certify; the full table still lands in the report.

    With g=0 and n small the sampling is replaced by exact enumeration
    against the truncated uniform-tree law.  Passing xi overrides the
    theta-resolved limit parameter; xi=0.5 compares against the critical
    law, the stated limit when theta -> 0.
    """
    if radii is None:
        radii = (cfg.r,)
    if any(r < 1 for r in radii):
        raise ValueError("radii must be >= 1")
    if cfg.g == 0 and cfg.n <= 6:
        return _exact_local_limit(cfg, radii)
    beta, xi_val, z_beta = _resolve_constants(cfg.theta, xi)

    def worker(rng, count):
        out: dict = {("plane", r): Counter() for r in radii}
        out.update({("shape", r): Counter() for r in radii})
        out["vertices"] = Counter()
        for _ in range(count):
            sample = sample_unicellular(cfg.n, cfg.g, rng)
            for r in radii:
                shape = ball_as_tree(sample, r)
                out["vertices"][("seen", r)] += shape.n_vertices
                out["vertices"][("nonfixed", r)] += shape.n_nonfixed
                if not shape.is_tree:
                    out[("plane", r)][NON_TREE] += 1
                    out[("shape", r)][NON_TREE] += 1
                    continue
                code = shape.unordered_code
                height = parse_plane_code(code).height()
                out[("shape", r)][code if height == r else SHALLOW] += 1
                if not shape.merged:
                    out[("plane", r)][plane_code(shape.plane)
                                      if shape.plane.height() == r else SHALLOW] += 1
                elif r == 1:
                    # a height-1 tree ball is a star, one plane order only,
                    # so merged vertices cost nothing at this radius
                    out[("plane", r)][code if height == 1 else SHALLOW] += 1
                else:
                    out[("plane", r)][MERGED] += 1
        return out

    merged = _fanout(cfg, worker)
    n_samples = cfg.samples
    rows: list[ReportRow] = []
    tv: list[tuple[str, float]] = []
    masses: list[tuple[str, float]] = []
    scored: list[str] = []
    passed = True
    for r in radii:
        plane_counts = merged[("plane", r)]
        shape_counts = merged[("shape", r)]
        plane_probs: dict[str, float] = {}
        for code in sorted(k for k in plane_counts if not k.startswith("!")):
            plane_probs[code] = ball_probability(xi_val, parse_plane_code(code))
        shape_probs: dict[str, float] = {}
        kd_counts: Counter = Counter()
        for code in sorted(k for k in shape_counts if not k.startswith("!")):
            k_edges, height, d, embeddings = _shape_stats(code)
            shape_probs[code] = embeddings * ball_probability_kd(xi_val, k_edges, d)
            kd_counts[f"k={k_edges} d={d}"] += shape_counts[code]
        tree_balls = n_samples - shape_counts[NON_TREE]
        plane_scored = r == 1 or plane_counts[MERGED] <= 0.05 * tree_balls
        sections = [
            (f"plane_r{r}", plane_counts, plane_probs, plane_scored),
            (f"shape_r{r}", shape_counts, shape_probs, True),
        ]
        if r == 2:
            # individual ball shapes get rare as they grow, so the z checks
            # need outcomes pooled by the (k, d) pair the law depends on
            kd_probs: dict[str, float] = {}
            for key in sorted(kd_counts):
                k_edges, d = (int(part.split("=")[1]) for part in key.split())
                kd_probs[key] = (_height2_tree_count(k_edges, d)
                                 * ball_probability_kd(xi_val, k_edges, d))
            sections.append((f"kd_r{r}", kd_counts, kd_probs, True))
        for section, counts, probs, section_scored in sections:
            head = set(sorted(probs, key=lambda c: (-probs[c], c))[:top_m])
            for code, prob in probs.items():
                row = _binomial_row(section, code, counts[code], prob, n_samples)
                rows.append(row)
                if (section_scored and code in head
                        and prob * n_samples >= min_expected
                        and abs(row.z) > z_max):
                    passed = False
            if section_scored:
                scored.append(section)
            tv.append((section, _section_tv(
                Counter({k: v for k, v in counts.items() if not k.startswith("!")}),
                probs, n_samples)))
        masses.append((f"nontree_r{r}", shape_counts[NON_TREE] / n_samples))
        masses.append((f"merged_r{r}", plane_counts[MERGED] / n_samples))
        masses.append((f"shallow_r{r}", shape_counts[SHALLOW] / n_samples))
        seen = merged["vertices"][("seen", r)]
        nonfixed = merged["vertices"][("nonfixed", r)]
        masses.append((f"nonfixed_vertex_fraction_r{r}",
                       nonfixed / seen if seen else 0.0))
    params = (("n", cfg.n), ("g", cfg.g), ("radii", ",".join(map(str, radii))),
              ("samples", cfg.samples), ("seed", cfg.seed), ("workers", cfg.workers),
              ("z_max", z_max), ("min_expected", min_expected), ("top_m", top_m))
    constants = (("beta", beta), ("xi", xi_val), ("z_beta", z_beta),
                 ("build", build_id()))
    return ComparisonReport("local-limit", params, constants, tuple(rows),
                            tuple(tv), tuple(masses), passed, tuple(scored))


def _exact_local_limit(cfg: ExperimentConfig, radii: tuple[int, ...]) -> ComparisonReport:
    """Planar small-n check: enumerated ball law versus truncated trees."""
    from .oracle import exact_ball_dist, exact_tree_ball_dist

    rows: list[ReportRow] = []
    tv: list[tuple[str, float]] = []
    passed = True
    for r in radii:
        by_map = exact_ball_dist(cfg.n, 0, r)
        by_tree = exact_tree_ball_dist(cfg.n, r)
        equal = by_map.probs == by_tree.probs
        passed = passed and equal
        for code in sorted(by_tree.probs):
            p_map = float(by_map.probs.get(code, 0))
            p_tree = float(by_tree.probs[code])
            rows.append(ReportRow(f"exact_r{r}", code, p_map, p_tree, 0.0, 0.0))
        tv.append((f"exact_r{r}", float(sum(
            abs(by_map.probs.get(c, 0) - by_tree.probs.get(c, 0))
            for c in set(by_map.probs) | set(by_tree.probs)) / 2)))
    params = (("n", cfg.n), ("g", cfg.g), ("radii", ",".join(map(str, radii))),
              ("samples", 0), ("seed", cfg.seed), ("workers", cfg.workers))
    # the g=0 limit parameters; the comparison itself is enumeration only
    constants = (("beta", 0.0), ("xi", 0.5), ("z_beta", 0.0),
                 ("build", build_id()))
    return ComparisonReport("local-limit", params, constants, tuple(rows),
                            tuple(tv), tuple(),
                            passed, tuple(f"exact_r{r}" for r in radii))


def run_root_degree(cfg: ExperimentConfig, reference: str = "limit",
                    z_max: float = 4.0, z_degree_max: int = 8,
                    tv_max: float | None = None) -> ComparisonReport:
    """Sampled root degree against the limit pmf or the exact finite-n pmf.

    reference "limit" uses the independent-sum law at theta = g/n;
    "exact" uses the enumerated distribution and needs oracle-scale n.
    """
    if reference not in ("limit", "exact"):
        raise ValueError("reference must be limit or exact")
    beta, xi_val, z_beta = _resolve_constants(cfg.theta, None)

    def worker(rng, count):
        degrees: Counter = Counter()
        for _ in range(count):
            degrees[root_degree(sample_unicellular(cfg.n, cfg.g, rng))] += 1
        return {"deg": degrees}

    degrees = _fanout(cfg, worker)["deg"]
    d_max = max(degrees)
    if reference == "limit":
        probs = {d: root_degree_limit_pmf(cfg.theta, d) for d in range(1, d_max + 1)}
    else:
        from .oracle import exact_root_degree_dist

        exact = exact_root_degree_dist(cfg.n, cfg.g)
        probs = {d: float(p) for d, p in sorted(exact.probs.items())}
    rows = []
    passed = True
    for d in sorted(set(degrees) | set(probs)):
        row = _binomial_row("root_degree", str(d), degrees.get(d, 0),
                            probs.get(d, 0.0), cfg.samples)
        rows.append(row)
        if d <= z_degree_max and probs.get(d, 0.0) > 0 and abs(row.z) > z_max:
            passed = False
    tv_val = _section_tv(Counter({str(d): c for d, c in degrees.items()}),
                         {str(d): p for d, p in probs.items()}, cfg.samples)
    if tv_max is not None and tv_val > tv_max:
        passed = False
    params = (("n", cfg.n), ("g", cfg.g), ("samples", cfg.samples),
              ("seed", cfg.seed), ("workers", cfg.workers),
              ("reference", reference))
    constants = (("beta", beta), ("xi", xi_val), ("z_beta", z_beta),
                 ("build", build_id()))
    return ComparisonReport("root-degree", params, constants, tuple(rows),
                            (("root_degree", tv_val),), tuple(),
                            passed, ("root_degree",))


def degree_profile(cfg: ExperimentConfig, rel_tol: float = 0.1) -> ComparisonReport:
    """Global mean degree identity next to the local ball average.

    The global mean is 2n over the vertex count, an exact identity with
    limit 2/(1-2 theta).  The local figure averages degrees over the
    radius-r ball of the survival-conditioned limit tree and approaches
    the strictly larger 2/(1-beta); the gap is the size bias of balls.
    Rows cover every radius up to cfg.r; the pass flag checks the last
    radius against the limit within rel_tol.
    """
    beta, xi_val, z_beta = _resolve_constants(cfg.theta, None)
    local_limit = 2.0 / (1.0 - beta) if beta < 1 else math.inf
    r_top = cfg.r

    def worker(rng, count):
        sums: Counter = Counter()
        for _ in range(count):
            gen = inf_ball_generation_sizes(xi_val, r_top + 1, rng)
            cum = np.cumsum(gen)
            for r in range(1, r_top + 1):
                v = float(cum[r])
                avg = (2.0 * (v - 1.0) + float(gen[r + 1])) / v
                sums[("sum", r)] += avg
                sums[("sumsq", r)] += avg * avg
        return {"acc": sums}

    acc = _fanout(cfg, worker)["acc"]
    rows = []
    n_samples = cfg.samples
    global_mean = 2.0 * cfg.n / (cfg.n + 1 - 2 * cfg.g)
    rows.append(ReportRow("global", "mean_degree", global_mean,
                          2.0 / (1.0 - 2.0 * cfg.theta), 0.0, 0.0))
    passed = True
    for r in range(1, r_top + 1):
        mean = acc[("sum", r)] / n_samples
        var = max(acc[("sumsq", r)] / n_samples - mean * mean, 0.0)
        se = math.sqrt(var / n_samples)
        z = (mean - local_limit) / se if se > 0 else 0.0
        rows.append(ReportRow("ball_average", f"r={r}", mean, local_limit, se, z))
        if r == r_top and abs(mean / local_limit - 1.0) > rel_tol:
            passed = False
    params = (("n", cfg.n), ("g", cfg.g), ("r", cfg.r), ("samples", cfg.samples),
              ("seed", cfg.seed), ("workers", cfg.workers))
    constants = (("beta", beta), ("xi", xi_val), ("z_beta", z_beta),
                 ("build", build_id()))
    return ComparisonReport("degree-profile", params, constants, tuple(rows),
                            tuple(), tuple(), passed, ("global", "ball_average"))
