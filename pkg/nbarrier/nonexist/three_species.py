"""
Nonexistence criterion for positive three-species travelling waves.

Eliminating the third species w (which stays below sigma3/c33) leaves a
two-species competition system for (u, v) with effective growth rates
``phi_i / c33``.  If that reduced system is strongly competitive and its
N-barrier lower bound on ``d1 c31 u + d2 c32 v`` already exceeds
``sigma3``, the third species cannot persist and no positive wave exists.

The three hypotheses checked here:

- h1: ``phi1 > 0`` and ``phi2 > 0``
- h2: ``c21 phi1 > c11 phi2`` and ``c12 phi2 > c22 phi1``
- h3: ``min(c31 phi2/(c21 d2), c32 phi1/(c12 d1)) min(d1**2, d2**2) >= sigma3 c33``
"""
from __future__ import annotations

import enum
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from numbers import Real
from typing import Any, Dict, List, Optional, Sequence, Tuple

from ..barrier.nbarrier import Weights, bounds_unscaled
from ..errors import ParameterError, UnknownAxis
from ..model.params import ThreeSpeciesParams, UnscaledParams
from ..utils.logging_system import setup_log_system

logger = setup_log_system("three_species")

SCOPE = (
    "certifies only the absence of positive waves with (u, v, w)(-inf) = (sigma1/c11, 0, 0) "
    "and (u, v, w)(+inf) = (0, sigma2/c22, 0); INCONCLUSIVE makes no claim about existence"
)

CSV_HEADER = (
    "axis_value",
    "phi1",
    "phi2",
    "h1",
    "h2",
    "h3",
    "margin_h1",
    "margin_h2",
    "margin_h3",
    "verdict",
)


class Verdict(str, enum.Enum):
    NONEXISTENCE_CERTIFIED = "NONEXISTENCE_CERTIFIED"
    INCONCLUSIVE = "INCONCLUSIVE"


@dataclass(frozen=True)
class ThreeSpeciesVerdict:
    phi1: Real
    phi2: Real
    h1: bool
    h2: bool
    h3: bool
    h3_lhs: Real
    h3_rhs: Real
    margins: Dict[str, Real]
    verdict: Verdict
    chain_lower: Optional[Real] = None
    scope: str = SCOPE

    @property
    def certified(self) -> bool:
        return self.verdict is Verdict.NONEXISTENCE_CERTIFIED

    def to_dict(self) -> Dict[str, Any]:
        return {
            "phi1": float(self.phi1),
            "phi2": float(self.phi2),
            "h1": self.h1,
            "h2": self.h2,
            "h3": self.h3,
            "h3_lhs": float(self.h3_lhs),
            "h3_rhs": float(self.h3_rhs),
            "margins": {k: float(v) for k, v in self.margins.items()},
            "verdict": self.verdict.value,
            "chain_lower": None if self.chain_lower is None else float(self.chain_lower),
            "scope": self.scope,
        }

    def to_csv_row(self, axis_value: Real) -> Tuple[Any, ...]:
        return (
            float(axis_value),
            float(self.phi1),
            float(self.phi2),
            self.h1,
            self.h2,
            self.h3,
            float(self.margins["h1"]),
            float(self.margins["h2"]),
            float(self.margins["h3"]),
            self.verdict.value,
        )


def reduced_system_margin(p: ThreeSpeciesParams, w_max: Optional[Real] = None) -> Tuple[Real, Real]:
    """
    Effective growth rates of u and v once w is replaced by ``w_max``.

    Returns ``(sigma1 - c13 w_max, sigma2 - c23 w_max)``.  ``w_max`` defaults
    to the largest value w can take, ``sigma3/c33``, which gives
    ``(sigma1 - c13 sigma3/c33, sigma2 - c23 sigma3/c33) = (phi1/c33, phi2/c33)``;
    only this default feeds :func:`check`.  An explicit ``w_max`` in
    ``[0, sigma3/c33]`` changes the result, ``w_max = 0`` giving ``(sigma1, sigma2)``.
    """
    ceiling = p.sigma3 / p.c33
    if w_max is None:
        w_max = ceiling
    elif not 0 <= w_max <= ceiling:
        raise ParameterError(f"w_max must lie in [0, sigma3/c33 = {ceiling}], got {w_max!r}")
    return p.sigma1 - p.c13 * w_max, p.sigma2 - p.c23 * w_max


def reduced_system(p: ThreeSpeciesParams) -> UnscaledParams:
    """The two-species system for (u, v) at the effective growth rates; needs h1."""
    s1, s2 = reduced_system_margin(p)
    return UnscaledParams(p.d1, p.d2, s1, s2, p.c11, p.c12, p.c21, p.c22)


def chain_lower_bound(p: ThreeSpeciesParams) -> Real:
    """
    Lower bound on ``c31 u + c32 v`` re-derived from the reduced system.

    With growth rates ``phi_i / c33`` and weights ``(c31, c32)`` the raw
    N-barrier lower bound equals the left side of h3 divided by c33.
    """
    return bounds_unscaled(reduced_system(p), Weights(p.c31, p.c32)).lower


def check(p: ThreeSpeciesParams) -> ThreeSpeciesVerdict:
    phi1 = p.sigma1 * p.c33 - p.sigma3 * p.c13
    phi2 = p.sigma2 * p.c33 - p.sigma3 * p.c23
    h1 = phi1 > 0 and phi2 > 0
    h2_left, h2_right = p.c21 * phi1 - p.c11 * phi2, p.c12 * phi2 - p.c22 * phi1
    h2 = h2_left > 0 and h2_right > 0
    h3_lhs = min(p.c31 * phi2 / (p.c21 * p.d2), p.c32 * phi1 / (p.c12 * p.d1)) * min(p.d1 * p.d1, p.d2 * p.d2)
    h3_rhs = p.sigma3 * p.c33
    h3 = h3_lhs >= h3_rhs
    certified = h1 and h2 and h3

    chain = None
    if h1 and h2:
        chain = chain_lower_bound(p)
        if h3 and chain < p.sigma3 * (1 - 1e-12):
            logger.error(f"reduced-system bound {chain} disagrees with the direct criterion ({p.sigma3})")
    verdict = Verdict.NONEXISTENCE_CERTIFIED if certified else Verdict.INCONCLUSIVE
    logger.debug(f"phi=({phi1}, {phi2}) h=({h1}, {h2}, {h3}) -> {verdict.value}")
    return ThreeSpeciesVerdict(
        phi1=phi1,
        phi2=phi2,
        h1=h1,
        h2=h2,
        h3=h3,
        h3_lhs=h3_lhs,
        h3_rhs=h3_rhs,
        margins={"h1": min(phi1, phi2), "h2": min(h2_left, h2_right), "h3": h3_lhs - h3_rhs},
        verdict=verdict,
        chain_lower=chain,
    )


def sweep(
    base: ThreeSpeciesParams,
    axis: str,
    values: Sequence[Real],
    max_workers: Optional[int] = None,
) -> List[ThreeSpeciesVerdict]:
    """One verdict per value of ``axis``, in input order."""
    if axis not in ThreeSpeciesParams.field_names():
        raise UnknownAxis(f"unknown sweep axis {axis!r}; expected one of {', '.join(ThreeSpeciesParams.field_names())}")
    points = [base.replace(**{axis: value}) for value in values]
    if not points:
        return []
    with ThreadPoolExecutor(max_workers=max_workers) as pool:
        return list(pool.map(check, points))
