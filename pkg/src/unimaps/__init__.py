"""Unicellular (one-face) maps on orientable surfaces.

Exact enumeration and exact uniform sampling through odd-cycle-decorated
plane trees, together with the supercritical geometric Galton-Watson
trees that describe their local (Benjamini-Schramm) limits when the
genus grows linearly with the size.
"""

__version__ = "0.1.0"

from .trees import PlaneTree, catalan, sample_plane_tree, plane_code, parse_plane_code, unordered_code
from .maps import (
    Permutation,
    RotationMap,
    RootedGraph,
    faces_and_genus,
    ball,
    rotation_ball_code,
    unfolding_ball_code,
)
from .counting import (
    OddPartition,
    odd_partitions,
    perm_count_for_type,
    odd_cycle_perm_count,
    lehman_walsh_count,
    conditioned_sum_pmf,
    CountTable,
)
from .asymptotics import (
    Regime,
    f_beta,
    solve_beta_theta,
    solve_beta_n,
    x_moments,
    regime,
    log_asymptotic_count,
    count_ratio_limit,
)
from .distributions import (
    XBetaLaw,
    GWParams,
    x_beta_pmf,
    size_biased_cycle_pmf,
    root_degree_limit_pmf,
    extinction_prob,
    gw_ball_sample,
    gw_inf_ball_sample,
    ball_probability,
)
from .sampler import (
    CDecoratedTree,
    UnicellularSample,
    OddCyclePermutationSampler,
    BallShape,
    sample_odd_cycle_permutation,
    sample_unicellular,
    root_degree,
    ball_as_tree,
)
from .oracle import (
    GluingCensus,
    enumerate_unicellular,
    census,
    exact_root_degree_dist,
    exact_ball_dist,
    ball_of_rotation_map,
    verify_surgery,
)
from .stats import DistTable, tv_distance, chi_square_gof
from .experiments import (
    ExperimentConfig,
    ComparisonReport,
    run_local_limit,
    run_root_degree,
    degree_profile,
)
