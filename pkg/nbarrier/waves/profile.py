"""
Travelling-wave profiles, solver settings and the finite-difference residual.

A profile samples the (e2, e3)-wave of the scaled system

    u'' + theta u' + u (1 - u - a1 v) = 0
    d v'' + theta v' + k v (1 - a2 u - v) = 0

on a uniform grid over [-L, L], with (u, v) = e2 = (1, 0) on the left and
e3 = (0, 1) on the right.
"""
from __future__ import annotations

import math
import os
from dataclasses import asdict, dataclass, field
from typing import Any, Dict, Optional, Sequence, Tuple

import numpy as np
import scipy.sparse as sp

from ..errors import ParameterError
from ..model.params import ScaledParams, ScaleMap, vector_field_scaled
from ..utils.artifacts import csv_text, dumps_json, sha256_hex

MIN_POINTS = 65
LEFT_STATE = (1.0, 0.0)
RIGHT_STATE = (0.0, 1.0)


def _seed_from_env() -> Optional[int]:
    raw = os.getenv("NBARRIER_SEED")
    if raw is None or raw.strip() == "":
        return None
    try:
        return int(raw)
    except ValueError as e:
        raise ParameterError(f"NBARRIER_SEED must be an integer, got {raw!r}") from e


@dataclass
class SolverConfig:
    L: float = 50.0
    N: int = 2000  # grid intervals; even so that x = 0 is a node
    tol: float = 1e-8
    max_iter: int = 50
    phase_anchor: float = 0.5  # value of u pinned at x = 0
    continuation: Optional[Sequence[ScaledParams]] = None
    eps_bc: float = 1e-6
    jitter_seed: Optional[int] = field(default_factory=_seed_from_env)
    continuation_steps: int = 8
    march_method: str = "bdf"  # 'bdf' | 'explicit'
    march_dt: Optional[float] = None  # explicit step; None => CFL limit
    oracle_chunks: int = 10
    abs_slack: float = 1e-6

    def __post_init__(self) -> None:
        if not (math.isfinite(self.L) and self.L > 0):
            raise ParameterError(f"L must be > 0, got {self.L!r}")
        if int(self.N) != self.N or self.N < MIN_POINTS - 1:
            raise ParameterError(f"N must be an integer >= {MIN_POINTS - 1}, got {self.N!r}")
        if self.N % 2:
            raise ParameterError(f"N must be even so that x = 0 is a grid node, got {self.N}")
        if not self.tol > 0:
            raise ParameterError(f"tol must be > 0, got {self.tol!r}")
        if self.max_iter < 1 or self.continuation_steps < 1 or self.oracle_chunks < 1:
            raise ParameterError("max_iter, continuation_steps and oracle_chunks must be >= 1")
        if not 0 < self.phase_anchor < 1:
            raise ParameterError(f"phase_anchor must lie in (0, 1), got {self.phase_anchor!r}")
        if self.march_method not in ("bdf", "explicit"):
            raise ParameterError(f"march_method must be 'bdf' or 'explicit', got {self.march_method!r}")
        if self.march_dt is not None and not self.march_dt > 0:
            raise ParameterError(f"march_dt must be > 0, got {self.march_dt!r}")
        self.N = int(self.N)

    @property
    def h(self) -> float:
        return 2.0 * self.L / self.N

    def grid(self) -> np.ndarray:
        return np.linspace(-self.L, self.L, self.N + 1)

    def to_dict(self) -> Dict[str, Any]:
        out = asdict(self)
        if self.continuation is not None:
            out["continuation"] = [p.to_dict() for p in self.continuation]
        return out

    def config_hash(self) -> str:
        return sha256_hex(dumps_json(self.to_dict()))


@dataclass
class WaveProfile:
    """Sampled wave: grid, both components, speed and solver provenance."""

    grid: np.ndarray
    u: np.ndarray
    v: np.ndarray
    theta: float
    meta: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        self.grid = np.asarray(self.grid, dtype=float)
        self.u = np.asarray(self.u, dtype=float)
        self.v = np.asarray(self.v, dtype=float)
        self.theta = float(self.theta)
        n = self.grid.size
        if self.grid.ndim != 1 or self.u.shape != (n,) or self.v.shape != (n,):
            raise ParameterError("grid, u and v must be 1-D arrays of equal length")
        if n < MIN_POINTS:
            raise ParameterError(f"a profile needs at least {MIN_POINTS} points, got {n}")
        if not np.all(np.diff(self.grid) > 0):
            raise ParameterError("grid must be strictly increasing")
        if not (np.all(np.isfinite(self.u)) and np.all(np.isfinite(self.v))):
            raise ParameterError("profile values must be finite")
        if self.u.min() < 0 or self.v.min() < 0:
            raise ParameterError("profile values must be nonnegative")

    @property
    def h(self) -> float:
        return float(self.grid[1] - self.grid[0])

    def endpoint_gaps(self) -> Tuple[float, float]:
        """Max-norm distance of the left end to e2 and of the right end to e3."""
        left = max(abs(self.u[0] - LEFT_STATE[0]), abs(self.v[0] - LEFT_STATE[1]))
        right = max(abs(self.u[-1] - RIGHT_STATE[0]), abs(self.v[-1] - RIGHT_STATE[1]))
        return float(left), float(right)

    # ------------------------------------------------------------------
    # Export
    # ------------------------------------------------------------------
    def to_csv_text(self) -> str:
        return csv_text(("x", "u", "v"), zip(self.grid.tolist(), self.u.tolist(), self.v.tolist()))

    def sidecar(self) -> Dict[str, Any]:
        return {
            "theta": self.theta,
            "residual": self.meta.get("residual"),
            "config_hash": self.meta.get("config_hash"),
            "meta": self.meta,
        }


# ----------------------------------------------------------------------
# Finite differences
# ----------------------------------------------------------------------
def fd_operators(m: int, h: float) -> Tuple[sp.csr_matrix, sp.csr_matrix]:
    """Central first and second differences on ``m`` interior nodes (Dirichlet ends removed)."""
    d1 = sp.diags([-np.ones(m - 1), np.ones(m - 1)], [-1, 1], format="csr") / (2 * h)
    d2 = sp.diags([np.ones(m - 1), -2 * np.ones(m), np.ones(m - 1)], [-1, 0, 1], format="csr") / (h * h)
    return d1, d2


def boundary_terms(left: float, right: float, m: int, h: float) -> Tuple[np.ndarray, np.ndarray]:
    """Contributions of the Dirichlet values to the first and second differences."""
    b1 = np.zeros(m)
    b2 = np.zeros(m)
    b1[0], b1[-1] = -left / (2 * h), right / (2 * h)
    b2[0], b2[-1] = left / (h * h), right / (h * h)
    return b1, b2


def residual_vectors(grid: np.ndarray, u: np.ndarray, v: np.ndarray, theta: float, p: ScaledParams):
    """Interior residuals of both equations on a uniform grid."""
    h = float(grid[1] - grid[0])
    if not np.allclose(np.diff(grid), h, rtol=1e-9, atol=0.0):
        raise ParameterError("residual needs a uniform grid")
    u_xx = (u[2:] - 2 * u[1:-1] + u[:-2]) / (h * h)
    v_xx = (v[2:] - 2 * v[1:-1] + v[:-2]) / (h * h)
    u_x = (u[2:] - u[:-2]) / (2 * h)
    v_x = (v[2:] - v[:-2]) / (2 * h)
    f, g = vector_field_scaled(p, u[1:-1], v[1:-1])
    return u_xx + theta * u_x + f, float(p.d) * v_xx + theta * v_x + g


def residual(profile: WaveProfile, p: ScaledParams) -> float:
    """Max-norm of the finite-difference residual at the interior nodes."""
    r_u, r_v = residual_vectors(profile.grid, profile.u, profile.v, profile.theta, p)
    return float(max(np.abs(r_u).max(), np.abs(r_v).max()))


def max_norm_distance(a: WaveProfile, b: WaveProfile) -> float:
    """Max-norm distance after interpolating ``b`` onto ``a``'s grid."""
    bu = np.interp(a.grid, b.grid, b.u)
    bv = np.interp(a.grid, b.grid, b.v)
    return float(max(np.abs(a.u - bu).max(), np.abs(a.v - bv).max()))


def transport_profile(profile: WaveProfile, scale_map: ScaleMap, to_scaled: bool) -> WaveProfile:
    """Move a profile between the raw and scaled systems."""
    if to_scaled:
        grid = scale_map.x_to_scaled(profile.grid)
        u, v = scale_map.state_to_scaled(profile.u, profile.v)
        theta = scale_map.theta_to_scaled(profile.theta)
    else:
        grid = scale_map.x_to_unscaled(profile.grid)
        u, v = scale_map.state_to_unscaled(profile.u, profile.v)
        theta = scale_map.theta_to_unscaled(profile.theta)
    meta = dict(profile.meta)
    meta["frame"] = "scaled" if to_scaled else "unscaled"
    return WaveProfile(
        np.asarray(grid, dtype=float),
        np.asarray(u, dtype=float),
        np.asarray(v, dtype=float),
        float(theta),
        meta,
    )
