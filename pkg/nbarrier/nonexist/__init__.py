"""Three-species nonexistence criterion for nbarrier."""

from .three_species import (  # noqa: F401
    CSV_HEADER,
    SCOPE,
    ThreeSpeciesVerdict,
    Verdict,
    chain_lower_bound,
    check,
    reduced_system,
    reduced_system_margin,
    sweep,
)

__all__ = [
    "CSV_HEADER",
    "SCOPE",
    "ThreeSpeciesVerdict",
    "Verdict",
    "chain_lower_bound",
    "check",
    "reduced_system",
    "reduced_system_margin",
    "sweep",
]
