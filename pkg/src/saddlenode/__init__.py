"""Sectorial solutions and the model conjugacy for a degenerate foliation family.

The family x^3 y' = y - x^2/(i pi) - alpha x^3 / (i sqrt(2 pi)) on the
projective plane has a saddle-node at the origin whose sectorial solution
structure is classified by two connection constants, 1 + alpha and
1 - alpha.  This package evaluates the sectorial solutions by complex-path
quadrature, estimates the connection constants, builds the explicit fibered
homeomorphism carrying the alpha-foliation onto the model alpha = 0, follows
it across the charts of the projective plane, and packages every checkable
claim into seeded verification suites.
"""

from .conjugacy import (
    ConjugacyMap,
    CutoffConfig,
    chi_pair,
    f_hat,
    f_sector,
    phi,
    phi_sectorial,
    x_map,
)
from .errors import (
    AlphaTooLarge,
    AnnulusGap,
    BranchViolation,
    ChartUndefined,
    InvalidPath,
    NonConvergence,
    OutOfRange,
    OutsideAnnulus,
    OutsideSector,
    Overflow,
    SaddleNodeError,
    StepFailure,
    UnknownSuite,
    WrongHalfPlane,
    ZeroInput,
)
from .foliation import (
    COEF_X2,
    DEFAULT_ANNULUS,
    FoliationParameter,
    HalfPlane,
    MartinetRamisModulus,
    RegionClass,
    RegionKind,
    Sector,
    base_path,
    classify_region,
    coef_x3,
    convert_from_original,
    formal_series_coefficients,
    hankel_closed_form,
    hankel_numeric,
    leaf_invert,
    leaf_value,
    modulus,
    sector_contains,
    sector_select,
    stokes_estimate,
    weak_separatrix_parts,
)
from .numerics import (
    Arc,
    Line,
    PathSpec,
    QuadratureConfig,
    QuadratureResult,
    gamma_half_integer,
    integrate_path,
    ode_transport,
    reversed_path,
)
from .plotting import LeafTrace, render_leaves, trace_leaves
from .projective import (
    Chart,
    ProjectivePoint,
    chart_transition,
    phi_st,
    phi_uv,
    singularity_inventory,
    t_at_infinity,
    weak_separatrix_at_infinity,
)
from .transverse import (
    BumpProfile,
    TransverseMap,
    bump_g,
    check_system,
    eta_of,
    psi_adjust,
    psi_apply,
    psi_invert,
)
from .verify import (
    SUITE_NAMES,
    SuiteConfig,
    VerificationReport,
    aggregate_pass,
    run_all,
    run_suite,
)

__version__ = "0.1.0"

__all__ = [
    "AlphaTooLarge", "AnnulusGap", "Arc", "BranchViolation", "BumpProfile",
    "COEF_X2", "Chart", "ChartUndefined", "ConjugacyMap", "CutoffConfig",
    "DEFAULT_ANNULUS", "FoliationParameter", "HalfPlane", "InvalidPath",
    "LeafTrace", "Line", "MartinetRamisModulus", "NonConvergence",
    "OutOfRange", "OutsideAnnulus", "OutsideSector", "Overflow", "PathSpec",
    "ProjectivePoint", "QuadratureConfig", "QuadratureResult", "RegionClass",
    "RegionKind", "SUITE_NAMES", "SaddleNodeError", "Sector", "StepFailure",
    "SuiteConfig", "TransverseMap", "UnknownSuite", "VerificationReport",
    "WrongHalfPlane", "ZeroInput", "aggregate_pass", "base_path", "bump_g",
    "chart_transition", "check_system", "chi_pair", "classify_region",
    "coef_x3", "convert_from_original", "eta_of", "f_hat", "f_sector",
    "formal_series_coefficients", "gamma_half_integer", "hankel_closed_form",
    "hankel_numeric", "integrate_path", "leaf_invert", "leaf_value",
    "modulus", "ode_transport", "phi", "phi_sectorial", "phi_st", "phi_uv",
    "psi_adjust", "psi_apply", "psi_invert", "render_leaves", "reversed_path",
    "run_all", "run_suite", "sector_contains", "sector_select",
    "singularity_inventory", "stokes_estimate", "t_at_infinity",
    "trace_leaves", "weak_separatrix_at_infinity", "weak_separatrix_parts",
    "x_map",
]
