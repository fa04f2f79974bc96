"""Exact continuous persistence landscapes.

Persistence measures with rational weights, their landscapes at real mass
levels, the inverse transform back to measures, L1 landscape geometry, an
exact 1-Wasserstein transport distance with a stability-bound checker, and
average-landscape comparisons.  All core arithmetic is exact.
"""

from .aggregation import (
    AverageComparison,
    average_landscape,
    compare_average_landscapes,
    rank_k_transform,
)
from .formats import (
    FormatError,
    decimal_string,
    format_rational,
    landscape_table,
    parse_diagram,
    parse_landscape,
    parse_rational,
    quadrant_mass_table,
    write_diagram,
    write_landscape,
)
from .inversion import (
    ReconstructionError,
    landscape_quadrant_mass,
    landscape_rect_mass,
    reconstruct,
    reconstruct_signed,
)
from .landscape import (
    Band,
    Landscape,
    LandscapeValidation,
    Profile,
    PropertyCheck,
    compute_landscape,
    l1_distance,
    l1_norm,
    landscape_value,
    validate_landscape,
)
from .measures import (
    PersistenceMeasure,
    Point,
    Quadrant,
    Rational,
    Rect,
    SignedMeasure,
    mean,
    to_rational,
)
from .suite import SuiteReport, run_suite
from .transport import (
    DIAGONAL,
    Diagonal,
    StabilityReport,
    TransportPlan,
    check_stability,
    ground_cost,
    wasserstein_bruteforce,
    wasserstein_distance,
)

__version__ = "0.1.0"

__all__ = [
    "AverageComparison",
    "average_landscape",
    "compare_average_landscapes",
    "rank_k_transform",
    "FormatError",
    "decimal_string",
    "format_rational",
    "landscape_table",
    "parse_diagram",
    "parse_landscape",
    "parse_rational",
    "quadrant_mass_table",
    "write_diagram",
    "write_landscape",
    "ReconstructionError",
    "landscape_quadrant_mass",
    "landscape_rect_mass",
    "reconstruct",
    "reconstruct_signed",
    "Band",
    "Landscape",
    "LandscapeValidation",
    "Profile",
    "PropertyCheck",
    "compute_landscape",
    "l1_distance",
    "l1_norm",
    "landscape_value",
    "validate_landscape",
    "PersistenceMeasure",
    "Point",
    "Quadrant",
    "Rational",
    "Rect",
    "SignedMeasure",
    "mean",
    "to_rational",
    "SuiteReport",
    "run_suite",
    "DIAGONAL",
    "Diagonal",
    "StabilityReport",
    "TransportPlan",
    "check_stability",
    "ground_cost",
    "wasserstein_bruteforce",
    "wasserstein_distance",
    "__version__",
]
