"""Low-dispersion diagonal point sets in the large-volume regime 1/4 < r <= 1/2."""

from .bounds import (
    alpha_closed,
    alpha_grid,
    bound_sosnovec,
    bound_thm1,
    bounds_report,
    verify_cross,
    verify_diagonal_sharpness,
    verify_single_point_floor,
    verify_uniqueness,
)
from .boxes import Box, BoxKind, classify, classify_empty_box
from .configuration import build_config, cross_config, in_extended_diagonal
from .errors import (
    BudgetExceeded,
    ConvergenceError,
    DiagDispError,
    DimensionMismatch,
    DomainError,
    PreconditionError,
)
from .oracle import dispersion, dispersion_many, maximal_empty_boxes, min_diagonal_dispersion
from .sequence import (
    alpha_iterative,
    cycle_length,
    endpoint_bisection,
    endpoint_closed_form,
    f_eval,
    reduced_sequence,
)

__version__ = "0.1.0"
