"""
Sharper lower bound from the tangent line of the conic F(u, v) = 0.

The outer q-line of the lower N-barrier can be pushed out until it touches
the hyperbola ``F(u, v) = alpha u (1-u-a1 v) + beta k v (1-a2 u-v) = 0``.
Eliminating the tangency point leaves a quadratic in the level ``lambda2``:

    mu2 lambda2**2 + mu1 lambda2 + mu0 = 0

with coefficients sharing the denominator ``beta d**2 - d s + alpha k``
(``s = alpha a1 + beta k a2``).  The denominator is negative exactly when
``d`` lies strictly between its two roots, and only then does the tangent
construction apply.  Of the two roots, the one whose tangency point sits in
the open first quadrant is kept.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from numbers import Real
from typing import Optional, Tuple

from ..barrier.nbarrier import Barrier, BoundPair, Direction, Weights, bounds_scaled, conic_value
from ..errors import NBarrierError, NoAdmissibleTangent, NotBistable, OutsideWindow
from ..model.params import ScaledParams, bistable
from ..utils.logging_system import setup_log_system

logger = setup_log_system("tangent")

# Relative tolerance for the quadratic residual and the level identity.
RESIDUAL_RTOL = 1e-10


@dataclass(frozen=True)
class TangentSolution:
    """Tangent level, tangency point and the quadratic it came from."""

    lambda2: float
    u_t: float
    v_t: float
    mu0: float
    mu1: float
    mu2: float
    disc: float
    lambda1: float
    eta: float
    d_window: Tuple[float, float]
    weights: Weights
    d: float
    rejected_lambda2: float
    rejected_point: Tuple[float, float]

    def as_barrier(self) -> Barrier:
        return Barrier(
            Direction.LOWER,
            self.lambda1,
            self.lambda2,
            self.eta,
            case_tag="tangent",
            weights=self.weights,
            d=self.d,
        )

    def to_dict(self) -> dict:
        return {
            "lambda2": self.lambda2,
            "lambda1": self.lambda1,
            "eta": self.eta,
            "tangency": [self.u_t, self.v_t],
            "mu": {"mu0": self.mu0, "mu1": self.mu1, "mu2": self.mu2},
            "disc": self.disc,
            "d_window": list(self.d_window),
            "d": self.d,
            "alpha": float(self.weights.alpha),
            "beta": float(self.weights.beta),
            "rejected": {"lambda2": self.rejected_lambda2, "point": list(self.rejected_point)},
        }


def _s(p: ScaledParams, w: Weights) -> Real:
    return w.alpha * p.a1 + w.beta * p.k * p.a2


def _require_bistable(p: ScaledParams) -> None:
    if not bistable(p):
        raise NotBistable(f"tangent construction needs a1 > 1 and a2 > 1, got a1={p.a1}, a2={p.a2}")


def tangent_denominator(p: ScaledParams, w: Weights) -> Real:
    """``beta d**2 - d s + alpha k``; negative inside the window, zero at its ends."""
    return w.beta * p.d * p.d - p.d * _s(p, w) + w.alpha * p.k


def window(p: ScaledParams, w: Weights) -> Tuple[float, float]:
    """Open interval of ``d`` for which the tangent construction applies."""
    _require_bistable(p)
    s = float(_s(p, w))
    alpha, beta, k = float(w.alpha), float(w.beta), float(p.k)
    root = math.sqrt(s * s - 4 * alpha * beta * k)
    d_max = (s + root) / (2 * beta)
    # Product of the two endpoints is alpha k / beta.
    d_min = 2 * alpha * k / (s + root)
    return d_min, d_max


def _coefficients(p: ScaledParams, w: Weights, den: float) -> Tuple[float, float, float]:
    alpha, beta, k, d = float(w.alpha), float(w.beta), float(p.k), float(p.d)
    s = float(_s(p, w))
    mu2 = (s * s - 4 * alpha * beta * k) / (4 * alpha * beta * den)
    mu1 = -((d + k) * s - 2 * k * (alpha + beta * d)) / (2 * den)
    mu0 = alpha * beta * (d - k) ** 2 / (4 * den)
    return mu0, mu1, mu2


def _tangency_point(p: ScaledParams, w: Weights, den: float, lam: float) -> Tuple[float, float]:
    alpha, beta, k, d = float(w.alpha), float(w.beta), float(p.k), float(p.d)
    s = float(_s(p, w))
    u = (-d * lam * s + alpha * beta * d * (d - k) + 2 * alpha * k * lam) / (2 * alpha * den)
    v = (alpha * p.a1 * lam + beta * (p.a2 * k * lam + alpha * d - 2 * d * lam - alpha * k)) / (-2 * beta * den)
    return u, float(v)


def _roots(mu0: float, mu1: float, mu2: float, disc: float) -> Tuple[float, float]:
    if mu0 == 0:
        return -mu1 / mu2, 0.0
    q = -0.5 * (mu1 + math.copysign(math.sqrt(disc), mu1))
    return q / mu2, mu0 / q


def solve_tangent(p: ScaledParams, w: Weights, debug: bool = False) -> TangentSolution:
    """
    Level and tangency point of the q-line tangent to F(u, v) = 0.

    Parameters
    ----------
    p : ScaledParams
        Bistable scaled parameters.
    w : Weights
        Weights of ``q = alpha u + d beta v``.
    debug : bool
        Also assert that the rejected root's tangency point leaves the open
        first quadrant.  Enabled automatically when the logger is at DEBUG.

    Raises
    ------
    OutsideWindow
        ``d`` is not strictly inside :func:`window`.
    NoAdmissibleTangent
        Neither root has its tangency point in the open first quadrant.
    """
    _require_bistable(p)
    den = float(tangent_denominator(p, w))
    if den >= 0:
        d_min, d_max = window(p, w)
        raise OutsideWindow(f"d={p.d} is outside the tangent window ({d_min:.6g}, {d_max:.6g})")
    mu0, mu1, mu2 = _coefficients(p, w, den)
    disc = mu1 * mu1 - 4 * mu0 * mu2
    if disc <= 0:
        raise OutsideWindow(f"tangent quadratic has no real roots (disc={disc:.3g})")

    candidates = []
    for lam in sorted(_roots(mu0, mu1, mu2, disc), reverse=True):
        candidates.append((lam, _tangency_point(p, w, den, lam)))
    admissible = [c for c in candidates if c[1][0] > 0 and c[1][1] > 0]
    if not admissible:
        raise NoAdmissibleTangent(
            f"no tangency point in the open first quadrant for a1={p.a1}, a2={p.a2}, d={p.d}"
        )
    chosen = admissible[0]
    rejected = candidates[1] if chosen is candidates[0] else candidates[0]

    if debug or logger.isEnabledFor(logging.DEBUG):
        _check_rejected(rejected)

    lambda2, (u_t, v_t) = chosen
    d = float(p.d)
    if d >= 1:
        lambda1, eta = lambda2 / d, lambda2 / d
    else:
        lambda1, eta = lambda2 * d, lambda2
    logger.debug(f"tangent level {lambda2:.10g} at ({u_t:.6g}, {v_t:.6g}); rejected {rejected[0]:.6g}")
    return TangentSolution(
        lambda2=lambda2,
        u_t=u_t,
        v_t=v_t,
        mu0=mu0,
        mu1=mu1,
        mu2=mu2,
        disc=disc,
        lambda1=lambda1,
        eta=eta,
        d_window=window(p, w),
        weights=w,
        d=d,
        rejected_lambda2=rejected[0],
        rejected_point=rejected[1],
    )


def _check_rejected(rejected) -> None:
    lam, (u, v) = rejected
    # At d == k the rejected root is 0 and touches at the origin.
    if min(u, v) > 1e-12:
        raise NBarrierError(f"rejected tangent root {lam:.6g} has tangency ({u:.6g}, {v:.6g}) inside the quadrant")


def sharp_lower_bound(p: ScaledParams, w: Weights) -> float:
    """Lower bound ``lambda2 min(d, 1/d)`` for q from the tangent construction."""
    sol = solve_tangent(p, w)
    d = float(p.d)
    return sol.lambda2 * min(d, 1 / d)


def tangent_bounds(p: ScaledParams, w: Weights) -> BoundPair:
    """Tangent lower bound paired with the N-barrier upper bound for q."""
    lower = sharp_lower_bound(p, w)
    upper = bounds_scaled(p, w).upper
    return BoundPair(lower, float(upper), "alpha*u + d*beta*v", provenance="tangent-line")


def unit_weight_sum_bounds(a1: Real, a2: Real) -> BoundPair:
    """``4/(a1+a2+2) <= u + v <= 1`` for equal diffusion and growth (d = k = 1)."""
    if not (a1 > 1 and a2 > 1):
        raise NotBistable(f"sum bound needs a1 > 1 and a2 > 1, got a1={a1}, a2={a2}")
    return BoundPair(4 / (a1 + a2 + 2), 1, "u + v", provenance="tangent-line")


def tangency_residuals(p: ScaledParams, sol: TangentSolution) -> Tuple[float, float, float]:
    """Conic value, slope mismatch and level mismatch at the tangency point."""
    w = sol.weights
    alpha, beta, k = float(w.alpha), float(w.beta), float(p.k)
    u, v = sol.u_t, sol.v_t
    f_u = alpha * (1 - 2 * u - p.a1 * v) - beta * k * p.a2 * v
    f_v = -alpha * p.a1 * u + beta * k * (1 - p.a2 * u - 2 * v)
    return (
        float(conic_value(p, w, u, v)),
        float(f_u / alpha - f_v / (sol.d * beta)),
        float(alpha * u + sol.d * beta * v - sol.lambda2),
    )


def fallback_lower(p: ScaledParams, w: Weights) -> Tuple[BoundPair, Optional[TangentSolution]]:
    """Tangent bounds when the construction applies, the N-barrier bounds otherwise."""
    try:
        return tangent_bounds(p, w), solve_tangent(p, w)
    except OutsideWindow as e:
        logger.warning(f"tangent construction unavailable ({e}); reporting N-barrier bounds")
        return bounds_scaled(p, w), None
