"""N-barrier bounds for nbarrier.

This package builds the three-line N-barriers for the lower and upper
bounds of ``q = alpha u + d beta v`` and evaluates the closed-form bounds
for the scaled system, for general kinetics with a nullcline box, and for
the raw (unscaled) system.
"""

from .nbarrier import (  # noqa: F401
    LOWER_CASES,
    UPPER_CASES,
    Barrier,
    BoundPair,
    Direction,
    F_eval,
    GeneralNullclineBox,
    Weights,
    barrier_geometry,
    bounds_general,
    bounds_scaled,
    bounds_sum_unscaled,
    bounds_unscaled,
    conic_value,
    hyperbola_check,
    inner_region_contains,
    lower_barrier_scaled,
    outer_region_contains,
    upper_barrier_scaled,
)

__all__ = [
    "LOWER_CASES",
    "UPPER_CASES",
    "Barrier",
    "BoundPair",
    "Direction",
    "F_eval",
    "GeneralNullclineBox",
    "Weights",
    "barrier_geometry",
    "bounds_general",
    "bounds_scaled",
    "bounds_sum_unscaled",
    "bounds_unscaled",
    "conic_value",
    "hyperbola_check",
    "inner_region_contains",
    "lower_barrier_scaled",
    "outer_region_contains",
    "upper_barrier_scaled",
]
