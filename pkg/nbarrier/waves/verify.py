"""
Pointwise check of the closed-form bounds along a computed profile.

The bounds are statements about exact solutions on the whole line, so each
comparison allows a discretisation slack ``abs_slack + residual * h**2``.
Failures are report entries, never exceptions.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

from ..barrier.nbarrier import Weights, bounds_scaled
from ..errors import NBarrierError
from ..model.params import ScaledParams
from ..tangent.tangent_line import sharp_lower_bound, unit_weight_sum_bounds
from ..utils.logging_system import setup_log_system
from .profile import WaveProfile, residual

logger = setup_log_system("verify")

PASS = "pass"
FAIL = "fail"
NOT_APPLICABLE = "not-applicable"


@dataclass
class BoundCheck:
    name: str
    kind: str  # 'lower' | 'upper'
    bound: Optional[float]
    observed: float
    margin: Optional[float]
    status: str
    note: str = ""

    def to_dict(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "kind": self.kind,
            "bound": self.bound,
            "observed": self.observed,
            "margin": self.margin,
            "status": self.status,
            "note": self.note,
        }


@dataclass
class VerificationReport:
    q_min: float
    q_max: float
    residual: float
    h: float
    slack: float
    eps_bc: float
    endpoint_gaps: Tuple[float, float]
    boundary_ok: bool
    checks: List[BoundCheck] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.boundary_ok and all(c.status != FAIL for c in self.checks)

    def check(self, name: str) -> BoundCheck:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "passed": self.passed,
            "q_min": self.q_min,
            "q_max": self.q_max,
            "residual": self.residual,
            "h": self.h,
            "slack": self.slack,
            "eps_bc": self.eps_bc,
            "endpoint_gaps": list(self.endpoint_gaps),
            "boundary_ok": self.boundary_ok,
            "checks": [c.to_dict() for c in self.checks],
        }


def _compare(name: str, kind: str, bound: float, observed: float, slack: float, applicable: bool) -> BoundCheck:
    margin = observed - bound if kind == "lower" else bound - observed
    if not applicable:
        return BoundCheck(name, kind, bound, observed, margin, NOT_APPLICABLE, "boundary states not reached")
    return BoundCheck(name, kind, bound, observed, margin, PASS if margin >= -slack else FAIL)


def bound_verify(
    profile: WaveProfile,
    p: ScaledParams,
    w: Weights,
    abs_slack: float = 1e-6,
) -> VerificationReport:
    """Compare ``q = alpha u + d beta v`` on ``profile`` with every applicable bound."""
    d = float(p.d)
    alpha, beta = float(w.alpha), float(w.beta)
    q = alpha * profile.u + d * beta * profile.v
    q_min, q_max = float(q.min()), float(q.max())
    res = residual(profile, p)
    h = profile.h
    slack = abs_slack + res * h * h
    eps_bc = float(profile.meta.get("eps_bc", 1e-6))
    gaps = profile.endpoint_gaps()
    boundary_ok = max(gaps) <= eps_bc
    if not boundary_ok:
        logger.warning(f"profile ends are {gaps[0]:.3g} and {gaps[1]:.3g} from e2 and e3; not a (e2, e3)-wave")

    pair = bounds_scaled(p, w)
    checks = [
        _compare("nbarrier-lower", "lower", float(pair.lower), q_min, slack, boundary_ok),
        _compare("nbarrier-upper", "upper", float(pair.upper), q_max, slack, boundary_ok),
    ]
    try:
        checks.append(_compare("tangent-lower", "lower", sharp_lower_bound(p, w), q_min, slack, boundary_ok))
    except NBarrierError as e:
        checks.append(BoundCheck("tangent-lower", "lower", None, q_min, None, NOT_APPLICABLE, str(e)))

    if p.d == 1 and p.k == 1:
        s = profile.u + profile.v
        sums = unit_weight_sum_bounds(p.a1, p.a2)
        checks.append(_compare("sum-lower", "lower", float(sums.lower), float(s.min()), slack, boundary_ok))
        checks.append(_compare("sum-upper", "upper", float(sums.upper), float(s.max()), slack, boundary_ok))

    report = VerificationReport(q_min, q_max, res, h, slack, eps_bc, gaps, boundary_ok, checks)
    failed = [c.name for c in checks if c.status == FAIL]
    if failed:
        logger.error(f"bound violations beyond slack {slack:.3g}: {', '.join(failed)}")
    return report

