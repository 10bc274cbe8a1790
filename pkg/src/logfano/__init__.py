"""Exact stability invariants for blow-ups of a quadric surface.

The package models rational surfaces obtained from P1 x P1 by blowing up
points of a fixed bidegree-(1,2) curve, computes Zariski decompositions and
volume profiles in exact rational arithmetic, and derives from them the
expected vanishing orders, log discrepancies, and delta-invariant bounds of
a catalogue of candidate curves, together with a toric cross-check and a
point-configuration stability comparison.
"""

from .algebra import (
    PiecewiseProfile,
    Polynomial,
    RationalFunctionOfBeta,
    rational_from_string,
    rational_to_string,
    reconstruct_rational_function,
    taylor_prefix,
)
from .errors import (
    ConfigurationError,
    DegeneracyError,
    InternalComputationError,
    LogFanoError,
    NotPseudoEffectiveError,
    PoleError,
    ReconstructionError,
    RegimeUnstableError,
    UnsupportedConfigurationError,
    ValidationError,
)
from .surface import (
    CurveRecord,
    DivisorClass,
    PointRecord,
    SurfaceModel,
    TowerSpec,
    TowerStep,
    apply_tower,
    blow_up,
    is_nef,
    surface_from_json,
    surface_to_json,
)
from .zariski import (
    Chamber,
    VolumeProfile,
    ZariskiResult,
    decompose,
    sweep,
    volume,
    volume_profile_to_json,
)
from .toric import (
    Fan2D,
    Polytope2D,
    ToricDivisorData,
    area,
    barycenter,
    builtin_blowup_divisor,
    builtin_valuation,
    polytope_from_divisor,
    psi,
    toric_expected_vanishing,
)
from .scenarios import (
    CASES,
    GitConfig,
    ScenarioConfig,
    alpha_invariant_coefficients,
    build_candidate,
    build_surface,
    git_config_for_labels,
    git_stability,
    kstab_row_for_labels,
    kstab_table,
    polarization,
    pulled_back_polarization,
)
from .invariants import (
    InvariantReport,
    delta_upper_bound,
    evaluate_scenario,
    expected_vanishing_order,
    log_discrepancy,
    log_discrepancy_symbolic,
    product_delta_upper_bound,
    ratio_as_function_of_beta,
    report_to_json,
    s_as_function_of_beta,
)
from .acceptance import CHECK_IDS, CheckLine, format_line, run_checks, summarize

__version__ = "0.1.0"

__all__ = [
    "CASES",
    "CHECK_IDS",
    "Chamber",
    "CheckLine",
    "ConfigurationError",
    "CurveRecord",
    "DegeneracyError",
    "DivisorClass",
    "Fan2D",
    "GitConfig",
    "InternalComputationError",
    "InvariantReport",
    "LogFanoError",
    "NotPseudoEffectiveError",
    "PiecewiseProfile",
    "PointRecord",
    "PoleError",
    "Polynomial",
    "Polytope2D",
    "RationalFunctionOfBeta",
    "ReconstructionError",
    "RegimeUnstableError",
    "ScenarioConfig",
    "SurfaceModel",
    "ToricDivisorData",
    "TowerSpec",
    "TowerStep",
    "UnsupportedConfigurationError",
    "ValidationError",
    "VolumeProfile",
    "ZariskiResult",
    "alpha_invariant_coefficients",
    "apply_tower",
    "area",
    "barycenter",
    "blow_up",
    "build_candidate",
    "build_surface",
    "builtin_blowup_divisor",
    "builtin_valuation",
    "decompose",
    "delta_upper_bound",
    "evaluate_scenario",
    "expected_vanishing_order",
    "format_line",
    "git_config_for_labels",
    "git_stability",
    "is_nef",
    "kstab_row_for_labels",
    "kstab_table",
    "log_discrepancy",
    "log_discrepancy_symbolic",
    "polarization",
    "polytope_from_divisor",
    "product_delta_upper_bound",
    "psi",
    "pulled_back_polarization",
    "ratio_as_function_of_beta",
    "rational_from_string",
    "rational_to_string",
    "reconstruct_rational_function",
    "report_to_json",
    "run_checks",
    "s_as_function_of_beta",
    "summarize",
    "surface_from_json",
    "surface_to_json",
    "sweep",
    "taylor_prefix",
    "toric_expected_vanishing",
    "volume",
    "volume_profile_to_json",
    "__version__",
]
