"""
Parameter containers for the diffusive Lotka-Volterra competition systems.

Three parameter sets are modelled: the scaled two-species system
(``a1, a2, d, k``), the raw two-species system (``d_i, sigma_i, c_ij``) and
the three-species system used by the nonexistence criterion.  All containers
are frozen dataclasses validated on construction; every operation here is a
pure function.

Values are not coerced to ``float``: passing :class:`fractions.Fraction`
keeps the closed-form quantities exact, which the golden tests rely on.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, fields
from numbers import Real
from typing import Optional, Tuple

from ..errors import AmbiguousRegime, ParameterError

Point = Tuple[Real, Real]


def _require_positive(owner: object, skip: Tuple[str, ...] = ()) -> None:
    for f in fields(owner):  # type: ignore[arg-type]
        if f.name in skip:
            continue
        value = getattr(owner, f.name)
        if isinstance(value, bool) or not isinstance(value, Real):
            raise ParameterError(f"{type(owner).__name__}.{f.name} must be a real number, got {value!r}")
        if not math.isfinite(value) or not value > 0:
            raise ParameterError(f"{type(owner).__name__}.{f.name} must be finite and > 0, got {value!r}")


@dataclass(frozen=True)
class ScaledParams:
    """Scaled system: u_t = u_yy + u(1-u-a1 v), v_t = d v_yy + k v(1-a2 u-v)."""

    a1: Real
    a2: Real
    d: Real
    k: Real = 1.0
    # Wave speed, when known; no bound depends on it.
    theta: Optional[Real] = None

    def __post_init__(self) -> None:
        _require_positive(self, skip=("theta",))
        if self.theta is not None and not math.isfinite(self.theta):
            raise ParameterError(f"ScaledParams.theta must be finite, got {self.theta!r}")

    def replace(self, **changes: Real) -> "ScaledParams":
        values = {f.name: getattr(self, f.name) for f in fields(self)}
        values.update(changes)
        return ScaledParams(**values)

    def to_dict(self) -> dict:
        out = {"a1": float(self.a1), "a2": float(self.a2), "d": float(self.d), "k": float(self.k)}
        if self.theta is not None:
            out["theta"] = float(self.theta)
        return out


@dataclass(frozen=True)
class UnscaledParams:
    """Raw system: d_i diffusion, sigma_i growth, c_ij competition rates."""

    d1: Real
    d2: Real
    sigma1: Real
    sigma2: Real
    c11: Real
    c12: Real
    c21: Real
    c22: Real

    def __post_init__(self) -> None:
        _require_positive(self)

    def to_dict(self) -> dict:
        return {f.name: float(getattr(self, f.name)) for f in fields(self)}


@dataclass(frozen=True)
class ThreeSpeciesParams:
    """Three competing species; the full 3x3 competition matrix plus d_i, sigma_i."""

    d1: Real
    d2: Real
    d3: Real
    sigma1: Real
    sigma2: Real
    sigma3: Real
    c11: Real
    c12: Real
    c13: Real
    c21: Real
    c22: Real
    c23: Real
    c31: Real
    c32: Real
    c33: Real

    def __post_init__(self) -> None:
        _require_positive(self)

    @classmethod
    def field_names(cls) -> Tuple[str, ...]:
        return tuple(f.name for f in fields(cls))

    def replace(self, **changes: Real) -> "ThreeSpeciesParams":
        values = {f.name: getattr(self, f.name) for f in fields(self)}
        values.update(changes)
        return ThreeSpeciesParams(**values)

    def to_dict(self) -> dict:
        return {f.name: float(getattr(self, f.name)) for f in fields(self)}


class RegimeCase(str, enum.Enum):
    """Long-time behaviour of the kinetics, by the signs of a1 - 1 and a2 - 1."""

    U_WINS = "U_WINS"
    V_WINS = "V_WINS"
    BISTABLE = "BISTABLE"
    COEXIST = "COEXIST"


@dataclass(frozen=True)
class Equilibria:
    e1: Point
    e2: Point
    e3: Point
    e4: Optional[Point] = None

    def to_dict(self) -> dict:
        def pair(p: Optional[Point]):
            return None if p is None else [float(p[0]), float(p[1])]

        return {"e1": pair(self.e1), "e2": pair(self.e2), "e3": pair(self.e3), "e4": pair(self.e4)}


def bistable(p: ScaledParams) -> bool:
    return p.a1 > 1 and p.a2 > 1


def bis(p: UnscaledParams) -> bool:
    """Strong competition in raw form: sigma1/c11 > sigma2/c21 and sigma2/c22 > sigma1/c12."""
    return p.sigma1 / p.c11 > p.sigma2 / p.c21 and p.sigma2 / p.c22 > p.sigma1 / p.c12


def classify(p: ScaledParams) -> RegimeCase:
    if p.a1 == 1 or p.a2 == 1:
        raise AmbiguousRegime(f"a1={p.a1}, a2={p.a2}: regime undefined when a coefficient equals 1")
    if p.a1 < 1 < p.a2:
        return RegimeCase.U_WINS
    if p.a2 < 1 < p.a1:
        return RegimeCase.V_WINS
    if p.a1 > 1 and p.a2 > 1:
        return RegimeCase.BISTABLE
    return RegimeCase.COEXIST


def equilibria(p: ScaledParams) -> Equilibria:
    one, zero = type(p.a1)(1), type(p.a1)(0)
    e1, e2, e3 = (zero, zero), (one, zero), (zero, one)
    det = 1 - p.a1 * p.a2
    if det == 0:
        return Equilibria(e1, e2, e3, None)
    u_star = (1 - p.a1) / det
    v_star = (1 - p.a2) / det
    if u_star > 0 and v_star > 0:
        return Equilibria(e1, e2, e3, (u_star, v_star))
    return Equilibria(e1, e2, e3, None)


def semi_trivial_states(p: UnscaledParams) -> Tuple[Point, Point]:
    """The raw endpoint states (sigma1/c11, 0) and (0, sigma2/c22)."""
    return (p.sigma1 / p.c11, 0 * p.sigma1), (0 * p.sigma2, p.sigma2 / p.c22)


# ----------------------------------------------------------------------
# Reaction terms
# ----------------------------------------------------------------------
def vector_field_scaled(p: ScaledParams, u, v):
    """Reaction terms of the scaled system; works on scalars and arrays."""
    return u * (1 - u - p.a1 * v), p.k * v * (1 - p.a2 * u - v)


def vector_field_unscaled(p: UnscaledParams, u, v):
    return (
        u * (p.sigma1 - p.c11 * u - p.c12 * v),
        v * (p.sigma2 - p.c21 * u - p.c22 * v),
    )


@dataclass(frozen=True)
class ScaleMap:
    """
    Affine change of variables between the raw and scaled systems.

    Scaled quantities are ``U = c11 u / sigma1``, ``V = c22 v / sigma2``,
    ``y = x sqrt(sigma1 / d1)`` and ``t' = sigma1 t``.  Under this map the
    wave speed becomes ``theta / sqrt(sigma1 d1)`` and the reaction terms are
    divided by ``sigma1**2 / c11`` and ``sigma1 sigma2 / c22`` respectively.
    """

    u_factor: Real
    v_factor: Real
    x_factor: Real
    t_factor: Real
    sigma1: Real
    sigma2: Real
    c11: Real
    c22: Real
    d1: Real

    @property
    def theta_factor(self) -> float:
        return 1.0 / math.sqrt(self.sigma1 * self.d1)

    @property
    def q_factor(self) -> Real:
        """Raw q = d1 alpha u + d2 beta v equals q_factor times the scaled q."""
        return self.d1

    # States
    def state_to_scaled(self, u, v):
        return u * self.u_factor, v * self.v_factor

    def state_to_unscaled(self, u, v):
        return u / self.u_factor, v / self.v_factor

    # Coordinates, times and speeds
    def x_to_scaled(self, x):
        return x * self.x_factor

    def x_to_unscaled(self, y):
        return y / self.x_factor

    def t_to_scaled(self, t):
        return t * self.t_factor

    def t_to_unscaled(self, t):
        return t / self.t_factor

    def theta_to_scaled(self, theta):
        return theta * self.theta_factor

    def theta_to_unscaled(self, theta):
        return theta / self.theta_factor

    # Reaction terms
    def field_to_scaled(self, f, g):
        return f * self.c11 / self.sigma1**2, g * self.c22 / (self.sigma1 * self.sigma2)

    def transform_weights(self, alpha: Real, beta: Real) -> Tuple[Real, Real]:
        """Scaled weights carrying the raw combination alpha u + beta v."""
        return alpha * self.sigma1 / self.c11, beta * self.sigma2 / self.c22


def scale(p: UnscaledParams) -> Tuple[ScaledParams, ScaleMap]:
    scaled = ScaledParams(
        a1=p.c12 * p.sigma2 / (p.c22 * p.sigma1),
        a2=p.c21 * p.sigma1 / (p.c11 * p.sigma2),
        d=p.d2 / p.d1,
        k=p.sigma2 / p.sigma1,
    )
    mapping = ScaleMap(
        u_factor=p.c11 / p.sigma1,
        v_factor=p.c22 / p.sigma2,
        x_factor=math.sqrt(p.sigma1 / p.d1),
        t_factor=p.sigma1,
        sigma1=p.sigma1,
        sigma2=p.sigma2,
        c11=p.c11,
        c22=p.c22,
        d1=p.d1,
    )
    return scaled, mapping
