"""
N-barrier construction and the closed-form bounds it yields.

An N-barrier is three nested lines in the (u, v) phase plane: two level
lines of ``q = alpha u + d beta v`` (levels ``lambda1`` inner and
``lambda2`` outer) and one level line of ``p = alpha u + beta v`` (level
``eta``).  Nested inside the region where the kinetics are sign-definite,
they keep a travelling-wave trajectory from crossing ``q = lambda1``.  For
the lower bound the three lines sit inside the inner triangle bounded by
the two nullclines; for the upper bound they sit outside the outer one.

Each construction splits into four cases on ``d >= 1`` and on how the
weights compare; the case that fired is recorded on the :class:`Barrier`.
At ``d == 1`` the ``d >= 1`` branch is taken, and equality of the weight
comparison goes to the ``>=`` branch.

All functions use plain arithmetic, so rational inputs give exact results.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from numbers import Real
from typing import Dict, Mapping, Tuple

from ..errors import NotBistable, ParameterError
from ..model.params import ScaledParams, UnscaledParams, bis, bistable

# Relative slack for the nesting invariants, which mix products and quotients.
_NESTING_RTOL = 1e-12

LOWER_CASES = (
    "d>=1, beta*a2*d>=alpha*a1",
    "d>=1, beta*a2*d<alpha*a1",
    "d<1, beta*a2*d>=alpha*a1",
    "d<1, beta*a2*d<alpha*a1",
)
UPPER_CASES = (
    "d>=1, beta*d>=alpha",
    "d>=1, beta*d<alpha",
    "d<1, beta*d>=alpha",
    "d<1, beta*d<alpha",
)


class Direction(str, enum.Enum):
    LOWER = "LOWER"
    UPPER = "UPPER"


@dataclass(frozen=True)
class Weights:
    """Positive weights of ``p = alpha u + beta v``."""

    alpha: Real
    beta: Real

    def __post_init__(self) -> None:
        for name in ("alpha", "beta"):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, Real) or not math.isfinite(value) or not value > 0:
                raise ParameterError(f"Weights.{name} must be finite and > 0, got {value!r}")

    def p(self, u, v):
        return self.alpha * u + self.beta * v

    def q(self, d: Real, u, v):
        return self.alpha * u + d * self.beta * v


@dataclass(frozen=True)
class Barrier:
    """One N-barrier: levels of the inner/outer q-lines and of the p-line."""

    direction: Direction
    lambda1: Real
    lambda2: Real
    eta: Real
    case_tag: str
    weights: Weights
    d: Real

    def __post_init__(self) -> None:
        if not (self.lambda1 > 0 and self.lambda2 > 0 and self.eta > 0):
            raise ParameterError(f"barrier levels must be positive: {self.levels()}")
        slack = 1 + _NESTING_RTOL
        if self.direction is Direction.LOWER:
            if self.lambda1 > self.eta * min(1, self.d) * slack or self.lambda1 > self.lambda2 * slack:
                raise ParameterError(f"lower barrier lines are not nested: {self.levels()}")
        elif self.lambda1 * slack < self.lambda2:
            raise ParameterError(f"upper barrier outer line does not dominate: {self.levels()}")

    def levels(self) -> Tuple[Real, Real, Real]:
        return self.lambda1, self.lambda2, self.eta

    def to_dict(self) -> dict:
        return {
            "direction": self.direction.value,
            "case_tag": self.case_tag,
            "lambda1": float(self.lambda1),
            "lambda2": float(self.lambda2),
            "eta": float(self.eta),
            "alpha": float(self.weights.alpha),
            "beta": float(self.weights.beta),
            "d": float(self.d),
        }


@dataclass(frozen=True)
class GeneralNullclineBox:
    """Intercepts of the outer and inner triangles of the generalised condition."""

    u_bar: Real
    v_bar: Real
    u_low: Real
    v_low: Real

    def __post_init__(self) -> None:
        if not (self.u_bar > self.u_low > 0 and self.v_bar > self.v_low > 0):
            raise ParameterError(
                "box needs u_bar > u_low > 0 and v_bar > v_low > 0, got "
                f"({self.u_bar}, {self.v_bar}, {self.u_low}, {self.v_low})"
            )


@dataclass(frozen=True)
class BoundPair:
    """Lower and upper bound on one linear combination of the profile."""

    lower: Real
    upper: Real
    quantity: str
    provenance: str = "n-barrier"
    levels: Mapping[str, Real] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.lower < 0 or not self.upper > 0 or self.lower > self.upper:
            raise ParameterError(f"invalid bound pair: lower={self.lower}, upper={self.upper}")

    def to_dict(self) -> dict:
        out = {
            "quantity": self.quantity,
            "lower": float(self.lower),
            "upper": float(self.upper),
            "provenance": self.provenance,
        }
        if self.levels:
            out["levels"] = {k: float(v) for k, v in self.levels.items()}
        return out


def _require_bistable(p: ScaledParams) -> None:
    if not bistable(p):
        raise NotBistable(f"bistable regime needs a1 > 1 and a2 > 1, got a1={p.a1}, a2={p.a2}")


# ----------------------------------------------------------------------
# Scaled system
# ----------------------------------------------------------------------
def lower_barrier_scaled(p: ScaledParams, w: Weights) -> Barrier:
    """N-barrier inside the inner nullcline triangle; ``lambda1`` is the lower bound for q."""
    _require_bistable(p)
    a1, a2, d = p.a1, p.a2, p.d
    alpha, beta = w.alpha, w.beta
    weight_ge = beta * a2 * d >= alpha * a1
    if d >= 1:
        if weight_ge:
            levels, tag = (alpha / (a2 * d), alpha / a2, alpha / (a2 * d)), LOWER_CASES[0]
        else:
            levels, tag = (beta / a1, beta * d / a1, beta / a1), LOWER_CASES[1]
    elif weight_ge:
        levels, tag = (alpha * d / a2, alpha / a2, alpha / a2), LOWER_CASES[2]
    else:
        levels, tag = (beta * d * d / a1, beta * d / a1, beta * d / a1), LOWER_CASES[3]
    return Barrier(Direction.LOWER, *levels, case_tag=tag, weights=w, d=d)


def upper_barrier_scaled(p: ScaledParams, w: Weights) -> Barrier:
    """N-barrier outside the outer nullcline triangle; ``lambda1`` is the upper bound for q."""
    _require_bistable(p)
    d = p.d
    alpha, beta = w.alpha, w.beta
    weight_ge = beta * d >= alpha
    if d >= 1:
        if weight_ge:
            levels, tag = (beta * d * d, beta * d, beta * d), UPPER_CASES[0]
        else:
            levels, tag = (alpha * d, alpha, alpha), UPPER_CASES[1]
    elif weight_ge:
        levels, tag = (beta, beta * d, beta), UPPER_CASES[2]
    else:
        levels, tag = (alpha / d, alpha, alpha / d), UPPER_CASES[3]
    return Barrier(Direction.UPPER, *levels, case_tag=tag, weights=w, d=d)


def bounds_scaled(p: ScaledParams, w: Weights) -> BoundPair:
    """
    Bounds on ``q = alpha u + d beta v`` along a nonnegative bistable wave.

    Only ``a1, a2, d`` and the weights enter; neither the speed nor ``k`` does.
    """
    _require_bistable(p)
    a1, a2, d = p.a1, p.a2, p.d
    alpha, beta = w.alpha, w.beta
    lower = min(alpha / (a2 * d), beta / a1) * min(1, d * d)
    upper = max(alpha / d, beta) * max(1, d * d)
    return BoundPair(lower, upper, "alpha*u + d*beta*v")


def hyperbola_check(p: ScaledParams, w: Weights) -> Real:
    """Discriminant of the conic F(u, v) = 0; positive means a hyperbola."""
    s = w.alpha * p.a1 + w.beta * p.k * p.a2
    return s * s - 4 * w.alpha * w.beta * p.k


def conic_value(p: ScaledParams, w: Weights, u, v):
    """F(u, v) = alpha u (1 - u - a1 v) + beta k v (1 - a2 u - v)."""
    return w.alpha * u * (1 - u - p.a1 * v) + w.beta * p.k * v * (1 - p.a2 * u - v)


# Convenience alias
F_eval = conic_value


def inner_region_contains(p: ScaledParams, u, v) -> bool:
    """True inside the inner triangle, where both reaction factors are nonnegative."""
    return u >= 0 and v >= 0 and 1 - u - p.a1 * v >= 0 and 1 - p.a2 * u - v >= 0


def outer_region_contains(p: ScaledParams, u, v) -> bool:
    """True in the outer region, where both reaction factors are nonpositive."""
    return u >= 0 and v >= 0 and 1 - u - p.a1 * v <= 0 and 1 - p.a2 * u - v <= 0


def barrier_geometry(b: Barrier) -> Dict[str, Tuple[Tuple[float, float], Tuple[float, float]]]:
    """The three lines clipped to the positive quadrant, as pairs of axis intercepts."""
    alpha, beta, d = float(b.weights.alpha), float(b.weights.beta), float(b.d)

    def q_line(level: Real):
        level = float(level)
        return (level / alpha, 0.0), (0.0, level / (d * beta))

    eta = float(b.eta)
    return {
        "q_inner": q_line(b.lambda1),
        "q_outer": q_line(b.lambda2),
        "p_line": ((eta / alpha, 0.0), (0.0, eta / beta)),
    }


# ----------------------------------------------------------------------
# Generalised and raw systems
# ----------------------------------------------------------------------
def bounds_general(
    d1: Real,
    d2: Real,
    box: GeneralNullclineBox,
    a: Real,
    b: Real,
    e_minus_zero: bool = False,
    e_plus_zero: bool = False,
) -> BoundPair:
    """
    Bounds on ``a u + b v`` for general kinetics satisfying the box condition.

    The lower bound vanishes when either endpoint state is the origin; the
    caller states this through ``e_minus_zero``/``e_plus_zero``.  The lower
    construction's levels are returned in ``levels``.
    """
    for name, value in (("d1", d1), ("d2", d2), ("a", a), ("b", b)):
        if not value > 0:
            raise ParameterError(f"{name} must be > 0, got {value!r}")
    chi = 0 if (e_minus_zero or e_plus_zero) else 1
    d_min, d_max = min(d1, d2), max(d1, d2)
    upper = max(a * box.u_bar, b * box.v_bar) * d_max / d_min
    lambda2 = min(a * box.u_low, b * box.v_low)
    eta = min(1 / d1, 1 / d2) * lambda2
    lambda1 = min(d1 / d2, d2 / d1) * lambda2
    lower = lambda2 * d_min / d_max * chi
    return BoundPair(
        lower,
        upper,
        "a*u + b*v",
        levels={"lambda1": lambda1, "lambda2": lambda2, "eta": eta, "chi": chi},
    )


def bounds_unscaled(p: UnscaledParams, w: Weights) -> BoundPair:
    """Bounds on ``q = d1 alpha u + d2 beta v`` for the raw system under [BiS]."""
    if not bis(p):
        raise NotBistable(
            "strong competition needs sigma1/c11 > sigma2/c21 and sigma2/c22 > sigma1/c12"
        )
    alpha, beta = w.alpha, w.beta
    lower = min(alpha * p.sigma2 / (p.c21 * p.d2), beta * p.sigma1 / (p.c12 * p.d1)) * min(
        p.d1 * p.d1, p.d2 * p.d2
    )
    upper = max(alpha * p.sigma1 / (p.c11 * p.d2), beta * p.sigma2 / (p.c22 * p.d1)) * max(
        p.d1 * p.d1, p.d2 * p.d2
    )
    return BoundPair(lower, upper, "d1*alpha*u + d2*beta*v")


def bounds_sum_unscaled(p: UnscaledParams, r1: Real = 1, r2: Real = 1) -> BoundPair:
    """Bounds on ``r1 u + r2 v``: the raw bounds with weights ``r1/d1`` and ``r2/d2``."""
    pair = bounds_unscaled(p, Weights(r1 / p.d1, r2 / p.d2))
    return BoundPair(pair.lower, pair.upper, "r1*u + r2*v", provenance="sum-bound",
                     levels={"r1": r1, "r2": r2})
