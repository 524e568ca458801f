"""Parameter model for nbarrier.

This package holds the parameter containers of the scaled, raw and
three-species competition systems, the regime classification by the signs
of ``a1 - 1`` and ``a2 - 1``, the equilibria, and the change of variables
between the raw and scaled systems.  ``config_io`` parses the strict JSON
documents the command line reads.
"""

from .params import (  # noqa: F401
    Equilibria,
    RegimeCase,
    ScaledParams,
    ScaleMap,
    ThreeSpeciesParams,
    UnscaledParams,
    bis,
    bistable,
    classify,
    equilibria,
    scale,
    semi_trivial_states,
    vector_field_scaled,
    vector_field_unscaled,
)

__all__ = [
    "Equilibria",
    "RegimeCase",
    "ScaledParams",
    "ScaleMap",
    "ThreeSpeciesParams",
    "UnscaledParams",
    "bis",
    "bistable",
    "classify",
    "equilibria",
    "scale",
    "semi_trivial_states",
    "vector_field_scaled",
    "vector_field_unscaled",
]
