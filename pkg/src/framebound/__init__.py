"""Tight p-frame constants, finite-group admissibility and eigenvalue bounds
for linearly transformed symmetric domains."""

from .errors import (
    ConsistencyError,
    DomainError,
    FrameboundError,
    InputError,
    NumericalError,
    PreconditionError,
    ResourceError,
)
from .frames import (
    FrameConstant,
    FrameVerification,
    fp_exact,
    fp_from_matrix,
    fp_montecarlo,
    fp_sphere_2d,
    multiplier_transform,
    nontight_sandwich,
    orbit_average,
    verify_tight_frame,
)
from .groups import FiniteGroup, build_group, closure, max_frame_order, molien_series
from .linalg import schatten, squared_singular_values
from .moments import moment, transformed_moment, two_dim_reciprocity
from .bounds import (
    BoundReport,
    buckling_bound,
    fractional_bound,
    fractional_ellipse_perimeter_bound,
    general_multiplier_bound,
    john_domain_bound,
    klein_gordon_bound,
    plate_bound,
    subordinator_bound,
)
from .symfunc import chi2_moment

__version__ = "0.1.0"
