from __future__ import annotations

from fractions import Fraction as F

import numpy as np
import pytest

from nbarrier.barrier import (
    LOWER_CASES,
    UPPER_CASES,
    Barrier,
    Direction,
    F_eval,
    GeneralNullclineBox,
    Weights,
    barrier_geometry,
    bounds_general,
    bounds_scaled,
    bounds_sum_unscaled,
    bounds_unscaled,
    hyperbola_check,
    inner_region_contains,
    lower_barrier_scaled,
    outer_region_contains,
    upper_barrier_scaled,
)
from nbarrier.errors import NotBistable, ParameterError
from nbarrier.model import ScaledParams, UnscaledParams, scale
from nbarrier.tangent import window


def scaled(d, a1=2, a2=3):
    return ScaledParams(a1=F(a1), a2=F(a2), d=F(d))


LOWER_GOLDEN = [
    # (d, alpha, beta) -> (lambda1, lambda2, eta), case
    ((F(2), 17, 18), (F(17, 6), F(17, 3), F(17, 6)), 0),
    ((F(2), 17, 5), (F(5, 2), F(5), F(5, 2)), 1),
    ((F(2, 3), 17, 18), (F(34, 9), F(17, 3), F(17, 3)), 2),
    ((F(1, 2), 17, 18), (F(9, 4), F(9, 2), F(9, 2)), 3),
]

UPPER_GOLDEN = [
    ((F(2), 17, 18), (F(72), F(36), F(36)), 0),
    ((F(2), 17, 5), (F(34), F(17), F(17)), 1),
    ((F(2, 3), 17, 33), (F(33), F(22), F(33)), 2),
    ((F(1, 2), 17, 18), (F(34), F(17), F(34)), 3),
]


@pytest.mark.parametrize("inputs, levels, case", LOWER_GOLDEN)
def test_lower_barrier_golden_levels(inputs, levels, case):
    d, alpha, beta = inputs
    b = lower_barrier_scaled(scaled(d), Weights(F(alpha), F(beta)))
    assert b.levels() == levels
    assert b.case_tag == LOWER_CASES[case]
    assert b.direction is Direction.LOWER


@pytest.mark.parametrize("inputs, levels, case", UPPER_GOLDEN)
def test_upper_barrier_golden_levels(inputs, levels, case):
    d, alpha, beta = inputs
    b = upper_barrier_scaled(scaled(d), Weights(F(alpha), F(beta)))
    assert b.levels() == levels
    assert b.case_tag == UPPER_CASES[case]


@pytest.mark.parametrize("inputs, levels, case", LOWER_GOLDEN + UPPER_GOLDEN)
def test_float_mode_matches_exact_levels(inputs, levels, case):
    d, alpha, beta = inputs
    p = ScaledParams(a1=2.0, a2=3.0, d=float(d))
    w = Weights(float(alpha), float(beta))
    lower = lower_barrier_scaled(p, w).levels()
    upper = upper_barrier_scaled(p, w).levels()
    assert any(
        all(got == pytest.approx(float(want), rel=1e-14) for got, want in zip(candidate, levels))
        for candidate in (lower, upper)
    )


def test_bounds_golden(exact_example):
    p, w = exact_example
    pair = bounds_scaled(p, w)
    assert pair.lower == F(17, 6)
    assert pair.upper == 72
    assert pair.provenance == "n-barrier"


def test_d_equal_one_takes_the_d_ge_one_branch():
    p = ScaledParams(a1=F(2), a2=F(3), d=F(1))
    assert lower_barrier_scaled(p, Weights(F(1), F(1))).case_tag.startswith("d>=1")
    assert upper_barrier_scaled(p, Weights(F(1), F(1))).case_tag.startswith("d>=1")


def test_weight_tie_goes_to_the_ge_branch():
    # beta*a2*d == alpha*a1
    p = ScaledParams(a1=F(3), a2=F(2), d=F(1))
    assert lower_barrier_scaled(p, Weights(F(2), F(3))).case_tag == LOWER_CASES[0]


def test_barrier_levels_equal_closed_form_bounds():
    rng = np.random.default_rng(2024)
    for _ in range(1000):
        a1, a2 = rng.uniform(1.01, 6.0, size=2)
        d = float(np.exp(rng.uniform(-2, 2)))
        p = ScaledParams(a1=a1, a2=a2, d=d, k=float(rng.uniform(0.2, 3)))
        w = Weights(*rng.uniform(0.1, 10.0, size=2))
        pair = bounds_scaled(p, w)
        assert lower_barrier_scaled(p, w).lambda1 == pytest.approx(pair.lower, rel=1e-13)
        assert upper_barrier_scaled(p, w).lambda1 == pytest.approx(pair.upper, rel=1e-13)


def test_bounds_need_bistability():
    with pytest.raises(NotBistable):
        bounds_scaled(ScaledParams(a1=0.5, a2=2.0, d=1.0), Weights(1.0, 1.0))
    with pytest.raises(NotBistable):
        lower_barrier_scaled(ScaledParams(a1=2.0, a2=1.0, d=1.0), Weights(1.0, 1.0))


def test_bounds_do_not_depend_on_k_or_theta(exact_example):
    p, w = exact_example
    base = bounds_scaled(p, w)
    for k in (F(1, 2), F(2)):
        other = bounds_scaled(p.replace(k=k, theta=F(3, 10)), w)
        assert (other.lower, other.upper) == (base.lower, base.upper)


def test_barrier_rejects_unnested_lines():
    with pytest.raises(ParameterError):
        Barrier(Direction.LOWER, 5.0, 1.0, 1.0, case_tag="x", weights=Weights(1.0, 1.0), d=1.0)
    with pytest.raises(ParameterError):
        Barrier(Direction.UPPER, 1.0, 5.0, 1.0, case_tag="x", weights=Weights(1.0, 1.0), d=1.0)


def test_weights_must_be_positive():
    with pytest.raises(ParameterError):
        Weights(0.0, 1.0)


# ----------------------------------------------------------------------
# Conic and regions
# ----------------------------------------------------------------------
def test_conic_passes_through_equilibria(exact_example):
    p, w = exact_example
    for u, v in ((0, 0), (1, 0), (0, 1), (F(1, 5), F(2, 5))):
        assert F_eval(p, w, u, v) == 0


def test_hyperbola_discriminant_positive_in_bistable_regime():
    rng = np.random.default_rng(5)
    for _ in range(500):
        a1, a2 = rng.uniform(1.001, 8.0, size=2)
        p = ScaledParams(a1=a1, a2=a2, d=1.0, k=float(rng.uniform(0.1, 5)))
        w = Weights(*rng.uniform(0.1, 10.0, size=2))
        assert hyperbola_check(p, w) > 0


def test_hyperbola_discriminant_is_window_radicand(exact_example):
    p, w = exact_example
    assert hyperbola_check(p, w) == 6520
    d_min, d_max = window(p, w)
    assert d_max - d_min == pytest.approx(6520**0.5 / 18, rel=1e-12)


def test_conic_is_nonnegative_inside_inner_triangle(worked_example):
    p, w = worked_example
    grid = np.linspace(0, 1, 41)
    for u in grid:
        for v in grid:
            if inner_region_contains(p, u, v):
                assert F_eval(p, w, u, v) >= -1e-15
            if outer_region_contains(p, u, v):
                assert F_eval(p, w, u, v) <= 1e-15


def test_region_membership(worked_example):
    p, _ = worked_example
    assert inner_region_contains(p, 0.1, 0.1)
    assert not inner_region_contains(p, 1.0, 1.0)
    assert outer_region_contains(p, 1.0, 1.0)
    assert not outer_region_contains(p, -0.1, 2.0)


def test_barrier_geometry_intercepts(exact_example):
    p, w = exact_example
    geometry = barrier_geometry(lower_barrier_scaled(p, w))
    assert set(geometry) == {"q_inner", "q_outer", "p_line"}
    (u0, _), (_, v1) = geometry["q_inner"]
    assert u0 == pytest.approx(1 / 6)
    assert v1 == pytest.approx(17 / 216)
    (u0, _), (_, v1) = geometry["p_line"]
    assert (u0, v1) == pytest.approx((1 / 6, 17 / 108))


def test_lower_barrier_lines_stay_inside_inner_triangle():
    rng = np.random.default_rng(9)
    for _ in range(300):
        a1, a2 = rng.uniform(1.05, 5.0, size=2)
        p = ScaledParams(a1=a1, a2=a2, d=float(np.exp(rng.uniform(-1.5, 1.5))))
        b = lower_barrier_scaled(p, Weights(*rng.uniform(0.2, 5.0, size=2)))
        for (ua, va), (ub, vb) in barrier_geometry(b).values():
            for t in np.linspace(0, 1, 11):
                u, v = ua + t * (ub - ua), va + t * (vb - va)
                assert 1 - u - a1 * v >= -1e-12 and 1 - a2 * u - v >= -1e-12


# ----------------------------------------------------------------------
# General and raw systems
# ----------------------------------------------------------------------
@pytest.mark.parametrize("d", [F(1, 2), F(2, 3), F(1), F(2), F(5)])
def test_general_bounds_reduce_to_scaled_bounds(d):
    p = scaled(d)
    w = Weights(F(17), F(18))
    box = GeneralNullclineBox(u_bar=F(1), v_bar=F(1), u_low=1 / p.a2, v_low=1 / p.a1)
    general = bounds_general(F(1), d, box, w.alpha, d * w.beta)
    pair = bounds_scaled(p, w)
    assert (general.lower, general.upper) == (pair.lower, pair.upper)
    assert general.levels["lambda2"] == min(F(17, 3), d * F(18, 2))


def test_general_bounds_golden():
    box = GeneralNullclineBox(u_bar=F(1), v_bar=F(1), u_low=F(1, 2), v_low=F(1, 2))
    pair = bounds_general(F(1), F(4), box, F(1), F(1))
    assert (pair.lower, pair.upper) == (F(1, 8), F(4))
    assert pair.levels == {"lambda1": F(1, 8), "lambda2": F(1, 2), "eta": F(1, 8), "chi": 1}


def test_general_lower_bound_vanishes_at_origin_endpoint():
    box = GeneralNullclineBox(u_bar=2.0, v_bar=2.0, u_low=0.5, v_low=0.5)
    assert bounds_general(1.0, 2.0, box, 1.0, 1.0, e_minus_zero=True).lower == 0
    assert bounds_general(1.0, 2.0, box, 1.0, 1.0, e_plus_zero=True).lower == 0
    assert bounds_general(1.0, 2.0, box, 1.0, 1.0).lower == pytest.approx(0.25)


def test_general_box_ordering():
    with pytest.raises(ParameterError):
        GeneralNullclineBox(u_bar=0.5, v_bar=2.0, u_low=1.0, v_low=0.5)


def test_unscaled_bounds_match_scaled_bounds_through_scale_map(random_bistable_unscaled):
    rng = np.random.default_rng(42)
    for _ in range(1000):
        raw = random_bistable_unscaled(rng)
        alpha, beta = rng.uniform(0.1, 5.0, size=2)
        direct = bounds_unscaled(raw, Weights(alpha, beta))
        p, mapping = scale(raw)
        transported = bounds_scaled(p, Weights(*mapping.transform_weights(alpha, beta)))
        assert direct.lower == pytest.approx(mapping.q_factor * transported.lower, rel=1e-12)
        assert direct.upper == pytest.approx(mapping.q_factor * transported.upper, rel=1e-12)


def test_unscaled_bounds_need_strong_competition():
    raw = UnscaledParams(d1=1.0, d2=1.0, sigma1=1.0, sigma2=1.0, c11=1.0, c12=0.5, c21=0.5, c22=1.0)
    with pytest.raises(NotBistable):
        bounds_unscaled(raw, Weights(1.0, 1.0))


def test_sum_bounds_use_diffusion_scaled_weights():
    raw = UnscaledParams(d1=F(1), d2=F(2), sigma1=F(1), sigma2=F(1), c11=F(1), c12=F(2), c21=F(3), c22=F(1))
    pair = bounds_sum_unscaled(raw)
    same = bounds_unscaled(raw, Weights(F(1), F(1, 2)))
    assert (pair.lower, pair.upper) == (same.lower, same.upper)
    assert pair.quantity == "r1*u + r2*v"
    assert pair.provenance == "sum-bound"
    # the endpoints (1, 0) and (0, 1) lie inside the bounds on u + v
    assert pair.lower <= 1 <= pair.upper
