"""Exact finite-horizon competitive analysis of the k-server problem on
finite metrics: offline optimum by work-function DP, deterministic
optimum by minimax game search, randomized optimum by an exact rational
LP with policy extraction."""

from .metric import (
    Metric,
    all_configurations,
    config_dist,
    covering_configurations,
    line_metric,
    load_metric,
    normalize,
    seq_dist,
    uniform_metric,
    validate_metric,
)
from .offline import WorkFunction, opt_answers, opt_cost, wf_init, wf_update
from .algorithms import (
    BoundParameters,
    Greedy,
    WorkFunctionAlgorithm,
    compute_bounds,
    simulate,
    wrap_resetting,
)
from .game import RatioResult, feasible_det, opt_det_ratio, worst_adversary
from .lp import (
    LPInstance,
    RandomizedPolicy,
    build_lp,
    expected_cost,
    extract_policy,
    lp_feasible,
    opt_rand_ratio,
)
from .report import RatioTable, emit, sweep_horizons

__version__ = "0.1.0"
