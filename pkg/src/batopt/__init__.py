"""batopt: bat-algorithm optimizer, stability analysis, convergence experiments."""

from .benchmarks import ObjectiveSpec, evaluate, evaluate_deterministic, get_spec, list_suite
from .convergence import (
    ConvergenceTarget,
    HitProbabilityCurve,
    MonotoneCheck,
    check_monotone,
    estimate_hit_probability,
    optimal_state_hit,
)
from .dynamics import (
    DynamicParams,
    RegionRaster,
    StabilityReport,
    Trajectory,
    TrajectoryState,
    dynamic_matrix,
    eigenvalues,
    first_convergence_iteration,
    iterate_trajectory,
    rasterize_region,
    recursion_residual,
    region_verdict,
)
from .engine import (
    BaParams,
    BatState,
    RunTrace,
    SwarmState,
    init_swarm,
    map_ml_params,
    run,
    step,
)

__version__ = "0.1.0"

__all__ = [
    "BaParams",
    "BatState",
    "ConvergenceTarget",
    "DynamicParams",
    "HitProbabilityCurve",
    "MonotoneCheck",
    "ObjectiveSpec",
    "RegionRaster",
    "RunTrace",
    "StabilityReport",
    "SwarmState",
    "Trajectory",
    "TrajectoryState",
    "check_monotone",
    "dynamic_matrix",
    "eigenvalues",
    "estimate_hit_probability",
    "evaluate",
    "evaluate_deterministic",
    "first_convergence_iteration",
    "get_spec",
    "init_swarm",
    "iterate_trajectory",
    "list_suite",
    "map_ml_params",
    "optimal_state_hit",
    "rasterize_region",
    "recursion_residual",
    "region_verdict",
    "run",
    "step",
]
