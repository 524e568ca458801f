"""Tangent-line lower bound for nbarrier.

Solves for the q-line tangent to the conic F(u, v) = 0, selects the
admissible root and derives the sharper lower bound and the equal-diffusion
bound on ``u + v``.
"""

from .tangent_line import (  # noqa: F401
    TangentSolution,
    fallback_lower,
    sharp_lower_bound,
    solve_tangent,
    tangency_residuals,
    tangent_bounds,
    tangent_denominator,
    unit_weight_sum_bounds,
    window,
)

__all__ = [
    "TangentSolution",
    "fallback_lower",
    "sharp_lower_bound",
    "solve_tangent",
    "tangency_residuals",
    "tangent_bounds",
    "tangent_denominator",
    "unit_weight_sum_bounds",
    "window",
]
