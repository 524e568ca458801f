"""
Exception hierarchy for nbarrier.

Domain errors derive from :class:`NBarrierError` and map to CLI exit code 1.
Invalid parameters and malformed documents raise :class:`ParameterError` or
:class:`ConfigError`, which the CLI treats as usage errors (exit code 2).
Each class also derives from the builtin exception that a caller would
naturally catch for the same situation.
"""
from __future__ import annotations

from typing import Optional


class NBarrierError(Exception):
    """Base class for domain errors raised by the library."""


class ParameterError(ValueError):
    """A parameter container was built with values violating its invariants."""


class ConfigError(ValueError):
    """A configuration document or command-line combination is malformed."""


class AmbiguousRegime(NBarrierError, ValueError):
    """a1 or a2 equals 1, where the regime classification is undefined."""


class NotBistable(NBarrierError, ValueError):
    """The operation needs the bistable regime (a1 > 1 and a2 > 1, or [BiS])."""


class OutsideWindow(NBarrierError, ValueError):
    """d lies outside the admissibility interval of the tangent construction."""


class NoAdmissibleTangent(OutsideWindow):
    """Neither tangent line touches the conic inside the open first quadrant."""


class NoConvergence(NBarrierError, RuntimeError):
    """Newton iteration stalled or ran out of iterations."""

    def __init__(self, message: str, last_residual: Optional[float] = None) -> None:
        super().__init__(message)
        self.last_residual = last_residual


class NonPositiveSolution(NBarrierError, RuntimeError):
    """A computed profile left the nonnegative cone beyond the clipping tolerance."""


class CFLViolation(NBarrierError, RuntimeError):
    """The explicit time step stayed unstable after the allowed number of halvings."""


class NotTraveling(NBarrierError, RuntimeError):
    """The level-set speed did not settle over the final part of the horizon."""


class UnknownAxis(NBarrierError, KeyError):
    """A sweep axis does not name a ThreeSpeciesParams field."""

    def __str__(self) -> str:  # KeyError quotes its argument otherwise
        return str(self.args[0]) if self.args else ""


class InconsistentInputs(NBarrierError, ValueError):
    """Plot inputs were computed for different parameters or weights."""
