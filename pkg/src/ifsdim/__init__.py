"""Dimension bounds for the stationary law of ``X -> X + beta | X / alpha``."""

__version__ = "0.1.0"

from .chain import (  # noqa: E402
    StationaryVector,
    TruncatedChain,
    XiVector,
    build_truncated_chain,
    solve_stationary,
    xi_converged,
    xi_from_stationary,
)
from .dimensions import (  # noqa: E402
    DimensionBounds,
    barreira_dim,
    d_bar,
    d_star_inverse,
    d_under,
    eggleston_dim,
    naive_upper_bound,
    theorem_bounds,
)
from .params import IfsParams, TheoremApplicability, theorem_applicability, validate_params  # noqa: E402

__all__ = [
    "IfsParams",
    "TheoremApplicability",
    "validate_params",
    "theorem_applicability",
    "TruncatedChain",
    "StationaryVector",
    "XiVector",
    "build_truncated_chain",
    "solve_stationary",
    "xi_from_stationary",
    "xi_converged",
    "DimensionBounds",
    "d_bar",
    "d_under",
    "d_star_inverse",
    "eggleston_dim",
    "barreira_dim",
    "naive_upper_bound",
    "theorem_bounds",
]
