"""Dunkl operator dynamics on truncated entire-function power series.

The package builds and verifies entire functions that are hypercyclic or
frequently hypercyclic for the Dunkl operator at sharp growth rates: weight
tables, operator actions, integral means, growth-rate diagnostics,
constructive builders, and orbit checks, all at configurable binary precision.
"""

from .numeric import (
    DEFAULT_PRECISION_BITS,
    LogScaled,
    get_precision,
    log_gamma,
    log_scaled_sum,
    precision,
    set_precision,
    to_decimal,
    from_decimal,
)
from .series import (
    TruncatedSeries,
    exp_truncation,
    read_series,
    write_series,
)
from .dunkl import (
    ALPHA_BOUNDARY_GAP,
    DunklWeights,
    ShiftDiagnostic,
    WeightedShift,
    apply_dunkl,
    apply_dunkl_direct,
    critical_rate_mu,
    right_inverse,
    shift_hypercyclicity_diagnostic,
)
from .means import (
    P_INF,
    HausdorffYoungResult,
    MeanParams,
    MeanResult,
    conjugate_exponent,
    hausdorff_young_check,
    mean_p,
)
from .growth import (
    GrowthProfile,
    RateEnvelope,
    barnes_asymptotic,
    growth_profile,
    lemma1_ratio,
    lemma3_ratio,
    mittag_leffler,
    rate_exponent,
    standard_r_grid,
)
from .construct import (
    BuilderConfig,
    ConstructionPlan,
    DensityDecayReport,
    FhcSchedule,
    FrequencyReport,
    InfeasibleConstruction,
    OrbitHitReport,
    TargetEnumeration,
    build_frequently_hypercyclic,
    build_hypercyclic,
    density_decay_check,
    enumerate_targets,
    frequency_report,
    fuc_tail_norms,
    poly_label,
    poly_normalize,
    poly_to_series,
    read_plan,
    verify_orbit_hits,
    write_plan,
)
from .dynamics import (
    OrbitReport,
    Thm3bReport,
    orbit_at_zero,
    thm3b_bound_check,
    windowed_c_star,
)
from .cli import ExperimentConfig, run

__all__ = [
    "ALPHA_BOUNDARY_GAP",
    "BuilderConfig",
    "ConstructionPlan",
    "DEFAULT_PRECISION_BITS",
    "DensityDecayReport",
    "DunklWeights",
    "ExperimentConfig",
    "FhcSchedule",
    "FrequencyReport",
    "GrowthProfile",
    "HausdorffYoungResult",
    "InfeasibleConstruction",
    "LogScaled",
    "MeanParams",
    "MeanResult",
    "OrbitHitReport",
    "OrbitReport",
    "P_INF",
    "RateEnvelope",
    "ShiftDiagnostic",
    "TargetEnumeration",
    "Thm3bReport",
    "TruncatedSeries",
    "WeightedShift",
    "apply_dunkl",
    "apply_dunkl_direct",
    "barnes_asymptotic",
    "build_frequently_hypercyclic",
    "build_hypercyclic",
    "conjugate_exponent",
    "critical_rate_mu",
    "density_decay_check",
    "enumerate_targets",
    "exp_truncation",
    "frequency_report",
    "from_decimal",
    "fuc_tail_norms",
    "get_precision",
    "growth_profile",
    "hausdorff_young_check",
    "lemma1_ratio",
    "lemma3_ratio",
    "log_gamma",
    "log_scaled_sum",
    "mean_p",
    "mittag_leffler",
    "orbit_at_zero",
    "poly_label",
    "poly_normalize",
    "poly_to_series",
    "precision",
    "rate_exponent",
    "read_plan",
    "read_series",
    "right_inverse",
    "run",
    "set_precision",
    "shift_hypercyclicity_diagnostic",
    "standard_r_grid",
    "thm3b_bound_check",
    "to_decimal",
    "verify_orbit_hits",
    "windowed_c_star",
    "write_plan",
    "write_series",
]

__version__ = "0.1.0"
