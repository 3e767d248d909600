"""Greatest Ricci lower bounds of complexity-one Fano T-varieties, in exact arithmetic."""

from .degenerations import (
    Degeneration,
    admissible_labels,
    analyze_degeneration,
    build_delta,
)
from .divisorial import (
    GENERIC,
    DivisorialPolytope,
    PiecewiseAffine,
    dh_barycenter_and_volume,
    refinement,
    validate_fano,
)
from .engine import RxInput, RxReport, base_ratio, compute_R, sup_t_nonneg
from .polytope import AffineFunc, Polytope, convex_hull

__all__ = [
    "GENERIC",
    "AffineFunc",
    "Degeneration",
    "DivisorialPolytope",
    "PiecewiseAffine",
    "Polytope",
    "RxInput",
    "RxReport",
    "admissible_labels",
    "analyze_degeneration",
    "base_ratio",
    "build_delta",
    "compute_R",
    "convex_hull",
    "dh_barycenter_and_volume",
    "refinement",
    "sup_t_nonneg",
    "validate_fano",
]
