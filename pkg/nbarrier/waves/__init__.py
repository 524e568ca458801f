"""Travelling-wave computation and bound verification for nbarrier.

``newton_solver`` computes the (e2, e3)-wave and its speed on a truncated
line, ``march_oracle`` recovers both independently by integrating the
parabolic system, and ``verify`` checks the closed-form bounds pointwise
along a computed profile.
"""

from .march_oracle import level_set, march_oracle  # noqa: F401
from .newton_solver import continuation_path, initial_guess, solve_wave  # noqa: F401
from .profile import (  # noqa: F401
    SolverConfig,
    WaveProfile,
    max_norm_distance,
    residual,
    transport_profile,
)
from .verify import BoundCheck, VerificationReport, bound_verify  # noqa: F401

__all__ = [
    "BoundCheck",
    "SolverConfig",
    "VerificationReport",
    "WaveProfile",
    "bound_verify",
    "continuation_path",
    "initial_guess",
    "level_set",
    "march_oracle",
    "max_norm_distance",
    "residual",
    "solve_wave",
    "transport_profile",
]
