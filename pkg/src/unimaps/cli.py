"""Command line driver for the counting and sampling tools and for the
verification runs built on them.

Exit codes: 0 success, 1 a verification or equality check failed,
2 usage error, 3 internal error.  All randomized subcommands take
--seed and produce byte-identical output for identical invocations.
"""

from __future__ import annotations

import argparse
import json
import sys
from collections import Counter
from pathlib import Path

import numpy as np

from .asymptotics import asymptotic_ratio, log_asymptotic_count, regime
from .counting import lehman_walsh_count
from .distributions import gw_inf_ball_sample, root_degree_limit_pmf
from .experiments import (
    ExperimentConfig,
    degree_profile,
    run_local_limit,
    run_root_degree,
)
from .oracle import census, verify_surgery
from .sampler import sample_unicellular
from .trees import enumerate_plane_trees, parse_plane_code, plane_code


def _write(args, text: str) -> None:
    if getattr(args, "out", None):
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)


def _rows_out(args, header: list[str], rows: list[list]) -> None:
    if args.format == "json":
        payload = [dict(zip(header, row)) for row in rows]
        _write(args, json.dumps(payload, sort_keys=True, indent=2) + "\n")
    else:
        lines = [",".join(header)]
        lines += [",".join(str(cell) for cell in row) for row in rows]
        _write(args, "\n".join(lines) + "\n")


def _cmd_count(args) -> int:
    genera = [args.g] if args.g is not None else list(range(args.n // 2 + 1))
    header = ["n", "g", "count"]
    if args.asymptotic:
        header += ["log_asymptotic", "ratio"]
    rows = []
    for g in genera:
        row: list = [args.n, g, lehman_walsh_count(args.n, g)]
        if args.asymptotic:
            row += [log_asymptotic_count(args.n, g), asymptotic_ratio(args.n, g)]
        rows.append(row)
    _rows_out(args, header, rows)
    return 0


def _cmd_beta(args) -> int:
    header = ["theta", "beta", "xi", "mean", "var", "a_theta"]
    rows = []
    for theta in args.theta:
        reg = regime(theta)
        rows.append([reg.theta, reg.beta, reg.xi, reg.mean_x, reg.var_x, reg.a_const])
    _rows_out(args, header, rows)
    return 0


def _cmd_root_degree(args) -> int:
    rows = [[d, root_degree_limit_pmf(args.theta, d)] for d in range(1, args.dmax + 1)]
    _rows_out(args, ["value", "probability"], rows)
    return 0


def _cmd_sample(args) -> int:
    rng = np.random.default_rng(args.seed)
    lines = []
    for _ in range(args.samples):
        sample = sample_unicellular(args.n, args.g, rng)
        graph = sample.graph
        obj = {
            "v": graph.n_vertices,
            "edges": [list(e) for e in graph.edges],
            "root_vertex": graph.root_vertex,
            "root_edge": graph.root_edge,
        }
        if args.emit_cdt:
            cdt = sample.source
            obj["cdt"] = {
                "tree": plane_code(cdt.tree),
                "perm": list(cdt.perm.image),
                "signs": list(cdt.signs),
            }
        lines.append(json.dumps(obj, sort_keys=True))
    _write(args, "\n".join(lines) + "\n")
    return 0


def _cmd_gw(args) -> int:
    rng = np.random.default_rng(args.seed)
    counts: Counter = Counter()
    for _ in range(args.samples):
        tree = gw_inf_ball_sample(args.xi, args.r, rng)
        counts[f"k={tree.n_edges} d={tree.count_at_height(args.r)}"] += 1
    rows = [[key, counts[key] / args.samples] for key in sorted(counts)]
    _rows_out(args, ["value", "probability"], rows)
    return 0


def _cmd_oracle_census(args) -> int:
    result = census(args.n)
    if args.format == "json":
        payload = {"n": result.n, "counts": {str(g): c for g, c in result.counts.items()}}
        _write(args, json.dumps(payload, sort_keys=True, indent=2) + "\n")
    else:
        rows = [[result.n, g, c] for g, c in result.counts.items()]
        _rows_out(args, ["n", "g", "count"], rows)
    return 0


def _surgery_rows(checks) -> tuple[list[list], bool]:
    rows = []
    all_equal = True
    for tree_code, check in checks:
        rows.append([tree_code, check.n, check.g, check.k, check.d, check.r,
                     check.lhs_count, check.rhs_count, check.equal])
        all_equal = all_equal and check.equal
    return rows, all_equal


def _cmd_oracle_surgery(args) -> int:
    tree = parse_plane_code(args.tree)
    check = verify_surgery(args.n, args.g, tree)
    rows, all_equal = _surgery_rows([(args.tree, check)])
    _rows_out(args, ["tree", "n", "g", "k", "d", "r", "lhs", "rhs", "equal"], rows)
    return 0 if all_equal else 1


def _cmd_verify_surgery(args) -> int:
    checks = []
    for k in range(1, args.kmax + 1):
        for tree in enumerate_plane_trees(k):
            r = tree.height()
            d = tree.count_at_height(r)
            for n in range(1, args.nmax + 1):
                n2 = n - k + d
                if n2 < 1:
                    continue
                for g in range(0, n // 2 + 1):
                    if 2 * g > n2:
                        continue
                    checks.append((plane_code(tree), verify_surgery(n, g, tree)))
    rows, all_equal = _surgery_rows(checks)
    _rows_out(args, ["tree", "n", "g", "k", "d", "r", "lhs", "rhs", "equal"], rows)
    return 0 if all_equal else 1


def _experiment_config(args, r: int | None = None) -> ExperimentConfig:
    return ExperimentConfig(
        n=args.n,
        g=args.g,
        r=r if r is not None else args.r[0] if isinstance(args.r, list) else args.r,
        samples=args.samples,
        seed=args.seed,
        workers=args.workers,
        out=args.out,
        fmt=args.format,
    )


def _cmd_verify_local_limit(args) -> int:
    cfg = _experiment_config(args, r=max(args.r))
    report = run_local_limit(
        cfg,
        radii=tuple(args.r),
        xi=0.5 if args.critical else None,
        z_max=args.z_max,
        min_expected=args.min_expected,
    )
    _write(args, report.render(args.format))
    return 0 if report.passed else 1


def _cmd_root_degree_verify(args) -> int:
    cfg = _experiment_config(args)
    report = run_root_degree(cfg, reference=args.reference, tv_max=args.tv_max)
    _write(args, report.render(args.format))
    return 0 if report.passed else 1


def _cmd_degree_profile(args) -> int:
    cfg = _experiment_config(args)
    report = degree_profile(cfg)
    _write(args, report.render(args.format))
    return 0 if report.passed else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="unimaps",
        description="One-face maps: exact counts and uniform samples, with limit checks.",
    )
    parser.add_argument("--seed", type=int, default=0,
                        help="RNG seed, unsigned 64-bit")
    parser.add_argument("--workers", type=int, default=1,
                        help="independent RNG streams to merge")
    parser.add_argument("--format", choices=("csv", "json"), default="csv",
                        help="output format")
    parser.add_argument("--out", default=None, help="output path (default stdout)")
    # the same flags are accepted after the subcommand; SUPPRESS keeps the
    # top-level value unless the subcommand position actually sets one
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    common.add_argument("--workers", type=int, default=argparse.SUPPRESS)
    common.add_argument("--format", choices=("csv", "json"),
                        default=argparse.SUPPRESS)
    common.add_argument("--out", default=argparse.SUPPRESS)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("count", parents=[common],
                       help="exact map counts; CSV columns n,g,count"
                       " plus log_asymptotic,ratio with --asymptotic")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--g", type=int, default=None)
    p.add_argument("--asymptotic", action="store_true")
    p.set_defaults(func=_cmd_count)

    p = sub.add_parser("beta", parents=[common], help="regime constants; CSV columns"
                       " theta,beta,xi,mean,var,a_theta")
    p.add_argument("--theta", type=float, nargs="+", required=True)
    p.set_defaults(func=_cmd_beta)

    p = sub.add_parser("root-degree", parents=[common], help="limit root-degree pmf; CSV columns"
                       " value,probability")
    p.add_argument("--theta", type=float, required=True)
    p.add_argument("--dmax", type=int, default=20)
    p.set_defaults(func=_cmd_root_degree)

    p = sub.add_parser("sample", parents=[common], help="uniform samples as JSON lines;"
                       " --emit-cdt includes the decorated tree")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--g", type=int, required=True)
    p.add_argument("--samples", type=int, default=1)
    p.add_argument("--emit-cdt", action="store_true")
    p.set_defaults(func=_cmd_sample)

    p = sub.add_parser("gw", parents=[common], help="conditioned branching-tree ball draws pooled"
                       " by (edges, deepest); CSV columns value,probability")
    p.add_argument("--xi", type=float, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--samples", type=int, default=10_000)
    p.set_defaults(func=_cmd_gw)

    p = sub.add_parser("oracle", help="exhaustive small-case ground truth")
    oracle_sub = p.add_subparsers(dest="oracle_command", required=True)
    pc = oracle_sub.add_parser("census", parents=[common], help="per-genus counts; CSV columns"
                               " n,g,count, JSON {n, counts}")
    pc.add_argument("--n", type=int, required=True)
    pc.set_defaults(func=_cmd_oracle_census)
    ps = oracle_sub.add_parser("surgery", parents=[common], help="one count identity check; CSV"
                               " columns tree,n,g,k,d,r,lhs,rhs,equal")
    ps.add_argument("--n", type=int, required=True)
    ps.add_argument("--g", type=int, required=True)
    ps.add_argument("--tree", required=True, help='plane code, e.g. "(()())"')
    ps.set_defaults(func=_cmd_oracle_surgery)

    p = sub.add_parser("verify", help="statistical and exact verification runs")
    verify_sub = p.add_subparsers(dest="verify_command", required=True)
    pl = verify_sub.add_parser("local-limit", parents=[common], help="sampled balls against the"
                               " limit law; report CSV section,outcome,"
                               "observed,expected,std_err,z")
    pl.add_argument("--n", type=int, required=True)
    pl.add_argument("--g", type=int, required=True)
    pl.add_argument("--r", type=int, nargs="+", default=[1, 2])
    pl.add_argument("--samples", type=int, default=10_000)
    pl.add_argument("--critical", action="store_true",
                    help="compare against the xi=1/2 law")
    pl.add_argument("--z-max", type=float, default=4.0)
    pl.add_argument("--min-expected", type=float, default=50.0)
    pl.set_defaults(func=_cmd_verify_local_limit)
    pr = verify_sub.add_parser("root-degree", parents=[common], help="sampled root degree against"
                               " the limit or exact pmf; report CSV as"
                               " local-limit")
    pr.add_argument("--n", type=int, required=True)
    pr.add_argument("--g", type=int, required=True)
    pr.add_argument("--samples", type=int, default=10_000)
    pr.add_argument("--reference", choices=("limit", "exact"), default="limit")
    pr.add_argument("--tv-max", type=float, default=None)
    pr.add_argument("--r", type=int, default=1, help=argparse.SUPPRESS)
    pr.set_defaults(func=_cmd_root_degree_verify)
    pv = verify_sub.add_parser("surgery", parents=[common], help="exhaustive count identity sweep;"
                               " CSV columns tree,n,g,k,d,r,lhs,rhs,equal")
    pv.add_argument("--nmax", type=int, default=6)
    pv.add_argument("--kmax", type=int, default=3)
    pv.set_defaults(func=_cmd_verify_surgery)

    p = sub.add_parser("degree-profile", parents=[common], help="global mean degree next to the"
                       " limit-tree ball average; report CSV as local-limit")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--g", type=int, required=True)
    p.add_argument("--r", type=int, default=12)
    p.add_argument("--samples", type=int, default=2000)
    p.set_defaults(func=_cmd_degree_profile)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if not (0 <= args.seed < 2**64):
        print("usage error: seed must fit in 64 unsigned bits", file=sys.stderr)
        return 2
    try:
        return args.func(args)
    except ValueError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # pragma: no cover - defensive
        print(f"internal error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
