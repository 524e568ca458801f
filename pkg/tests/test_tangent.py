from __future__ import annotations

import logging
import math

import numpy as np
import pytest

from nbarrier.barrier import Direction, Weights, bounds_scaled, lower_barrier_scaled
from nbarrier.errors import NBarrierError, NoAdmissibleTangent, NotBistable, OutsideWindow
from nbarrier.model import ScaledParams
from nbarrier.tangent import (
    fallback_lower,
    sharp_lower_bound,
    solve_tangent,
    tangency_residuals,
    tangent_bounds,
    tangent_denominator,
    unit_weight_sum_bounds,
    window,
)


def test_worked_example_level_and_tangency(worked_example):
    p, w = worked_example
    sol = solve_tangent(p, w)
    assert sol.lambda2 == pytest.approx(153 * (79 + math.sqrt(4611)) / 1630, rel=1e-12)
    assert sol.lambda2 == pytest.approx(13.789, abs=1e-3)
    assert (sol.u_t, sol.v_t) == pytest.approx((0.4551, 0.16814), rel=1e-3)
    assert (sol.lambda1, sol.eta) == pytest.approx((sol.lambda2 / 2, sol.lambda2 / 2))


def test_worked_example_rejected_root_leaves_quadrant(worked_example):
    p, w = worked_example
    sol = solve_tangent(p, w)
    assert sol.rejected_lambda2 == pytest.approx(1.0415, rel=1e-3)
    u, v = sol.rejected_point
    assert u < 0 < v


def test_small_diffusion_ratio_level():
    p = ScaledParams(a1=2.0, a2=3.0, d=2 / 3)
    sol = solve_tangent(p, Weights(17.0, 18.0))
    assert sol.lambda2 == pytest.approx(51 * (133 + math.sqrt(16059)) / 1630, rel=1e-12)
    assert sol.lambda1 == pytest.approx(sol.lambda2 * 2 / 3)
    assert sol.eta == pytest.approx(sol.lambda2)


def test_window_endpoints(worked_example):
    p, w = worked_example
    d_min, d_max = window(p, w)
    assert d_min == pytest.approx((88 - math.sqrt(6520)) / 36, rel=1e-12)
    assert d_max == pytest.approx((88 + math.sqrt(6520)) / 36, rel=1e-12)
    for end in (d_min, d_max):
        assert tangent_denominator(p.replace(d=end), w) == pytest.approx(0.0, abs=1e-10)
    assert tangent_denominator(p, w) < 0


@pytest.mark.parametrize("d", [0.1, 10.0])
def test_outside_window_raises(worked_example, d):
    p, w = worked_example
    with pytest.raises(OutsideWindow):
        solve_tangent(p.replace(d=d), w)


def test_requires_bistable_regime():
    with pytest.raises(NotBistable):
        solve_tangent(ScaledParams(a1=0.5, a2=3.0, d=1.0), Weights(1.0, 1.0))
    with pytest.raises(NotBistable):
        unit_weight_sum_bounds(2.0, 0.9)


def test_tangency_residuals_vanish(worked_example):
    p, w = worked_example
    for d in (0.5, 2 / 3, 1.0, 2.0):
        q = p.replace(d=d)
        sol = solve_tangent(q, w)
        conic, slope, level = tangency_residuals(q, sol)
        scale = max(1.0, sol.lambda2)
        assert abs(conic) <= 1e-10 * scale**2
        assert abs(slope) <= 1e-10 * scale
        assert abs(level) <= 1e-10 * scale


def test_window_without_first_quadrant_tangency(worked_example):
    p, w = worked_example
    q = p.replace(d=4.0)
    # 18*16 - 4*88 + 17 < 0: inside the window, yet both tangency points leave the quadrant
    assert tangent_denominator(q, w) == pytest.approx(-47.0)
    with pytest.raises(NoAdmissibleTangent, match="open first quadrant"):
        solve_tangent(q, w)
    pair, sol = fallback_lower(q, w)
    assert sol is None
    assert pair.provenance == "n-barrier"


def test_quadratic_coefficients_vanish_at_chosen_root(worked_example):
    p, w = worked_example
    sol = solve_tangent(p, w)
    value = sol.mu2 * sol.lambda2**2 + sol.mu1 * sol.lambda2 + sol.mu0
    assert value == pytest.approx(0.0, abs=1e-10 * sol.lambda2**2 * abs(sol.mu2))
    assert sol.disc == pytest.approx(sol.mu1**2 - 4 * sol.mu0 * sol.mu2)


def test_equal_diffusion_and_growth_gives_zero_constant_term():
    p = ScaledParams(a1=2.0, a2=3.0, d=1.0, k=1.0)
    sol = solve_tangent(p, Weights(1.0, 1.0), debug=True)
    assert sol.mu0 == 0
    assert sol.rejected_lambda2 == 0
    assert sol.lambda2 == pytest.approx(4 / 7, rel=1e-12)
    assert (sol.u_t, sol.v_t) == pytest.approx((2 / 7, 2 / 7), rel=1e-12)


def test_unit_weight_sum_bound_matches_tangent_level():
    rng = np.random.default_rng(13)
    for _ in range(1000):
        a1, a2 = rng.uniform(1.01, 9.0, size=2)
        p = ScaledParams(a1=a1, a2=a2, d=1.0, k=1.0)
        sol = solve_tangent(p, Weights(1.0, 1.0))
        pair = unit_weight_sum_bounds(a1, a2)
        assert sol.lambda2 == pytest.approx(pair.lower, rel=1e-12)
        assert (sol.u_t, sol.v_t) == pytest.approx((pair.lower / 2, pair.lower / 2), rel=1e-12)
        assert pair.upper == 1


def test_unit_weight_sum_bound_golden():
    pair = unit_weight_sum_bounds(2, 3)
    assert pair.lower == pytest.approx(4 / 7)
    assert pair.quantity == "u + v"
    assert pair.provenance == "tangent-line"


def test_tangent_bound_dominates_barrier_bound():
    rng = np.random.default_rng(17)
    checked = 0
    for _ in range(600):
        a1, a2 = rng.uniform(1.05, 6.0, size=2)
        k = float(rng.uniform(0.3, 3.0))
        w = Weights(*rng.uniform(0.2, 10.0, size=2))
        probe = ScaledParams(a1=a1, a2=a2, d=1.0, k=k)
        d_min, d_max = window(probe, w)
        frac = rng.uniform(0.05, 0.95)
        d = math.exp(math.log(d_min) + frac * (math.log(d_max) - math.log(d_min)))
        p = probe.replace(d=d)
        try:
            sol = solve_tangent(p, w)
        except NBarrierError:
            continue
        checked += 1
        barrier = lower_barrier_scaled(p, w)
        assert sol.lambda2 >= barrier.lambda2 * (1 - 1e-12)
        assert sharp_lower_bound(p, w) >= bounds_scaled(p, w).lower * (1 - 1e-12)
    assert checked > 300


def test_tangent_bounds(worked_example):
    p, w = worked_example
    pair = tangent_bounds(p, w)
    assert pair.lower == pytest.approx(solve_tangent(p, w).lambda2 / 2)
    assert pair.upper == 72
    assert pair.provenance == "tangent-line"


def test_fallback_lower_inside_and_outside_window(worked_example, caplog):
    p, w = worked_example
    pair, sol = fallback_lower(p, w)
    assert sol is not None and pair.provenance == "tangent-line"

    with caplog.at_level(logging.WARNING):
        pair, sol = fallback_lower(p.replace(d=10.0), w)
    assert sol is None
    assert pair.provenance == "n-barrier"
    assert pair.lower == bounds_scaled(p.replace(d=10.0), w).lower


def test_as_barrier_and_dict(worked_example):
    p, w = worked_example
    sol = solve_tangent(p, w)
    barrier = sol.as_barrier()
    assert barrier.direction is Direction.LOWER
    assert barrier.case_tag == "tangent"
    assert barrier.levels() == (sol.lambda1, sol.lambda2, sol.eta)
    doc = sol.to_dict()
    assert doc["tangency"] == [sol.u_t, sol.v_t]
    assert doc["d_window"] == list(window(p, w))
