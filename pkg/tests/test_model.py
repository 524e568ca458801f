from __future__ import annotations

import math
from fractions import Fraction as F

import numpy as np
import pytest

from nbarrier.errors import AmbiguousRegime, ConfigError, ParameterError
from nbarrier.model import (
    RegimeCase,
    ScaledParams,
    UnscaledParams,
    bis,
    bistable,
    classify,
    equilibria,
    scale,
    semi_trivial_states,
    vector_field_scaled,
    vector_field_unscaled,
)
from nbarrier.model.config_io import (
    detect_kind,
    load_document,
    parse_scaled,
    parse_three_species,
    parse_unscaled,
    parse_weights,
)


# ----------------------------------------------------------------------
# Validation and regimes
# ----------------------------------------------------------------------
@pytest.mark.parametrize(
    "a1, a2, expected",
    [
        (2, 3, RegimeCase.BISTABLE),
        (0.5, 2, RegimeCase.U_WINS),
        (2, 0.5, RegimeCase.V_WINS),
        (0.5, 0.5, RegimeCase.COEXIST),
    ],
)
def test_classify(a1, a2, expected):
    assert classify(ScaledParams(a1=a1, a2=a2, d=1)) is expected


def test_classify_rejects_unit_coefficient():
    with pytest.raises(AmbiguousRegime):
        classify(ScaledParams(a1=1, a2=3, d=1))


@pytest.mark.parametrize("field", ["a1", "a2", "d", "k"])
def test_scaled_params_need_positive_finite_values(field):
    values = {"a1": 2.0, "a2": 3.0, "d": 1.0, "k": 1.0}
    for bad in (0.0, -1.0, math.inf, math.nan):
        values[field] = bad
        with pytest.raises(ParameterError):
            ScaledParams(**values)


def test_scaled_params_reject_bool():
    with pytest.raises(ParameterError):
        ScaledParams(a1=True, a2=3.0, d=1.0)


def test_theta_is_optional_and_unconstrained_in_sign():
    assert ScaledParams(a1=2, a2=3, d=1, theta=-0.4).theta == -0.4
    with pytest.raises(ParameterError):
        ScaledParams(a1=2, a2=3, d=1, theta=math.inf)


def test_equilibria_bistable_has_interior_saddle():
    eq = equilibria(ScaledParams(a1=F(2), a2=F(3), d=F(1)))
    assert eq.e1 == (0, 0) and eq.e2 == (1, 0) and eq.e3 == (0, 1)
    assert eq.e4 == (F(1, 5), F(2, 5))


def test_equilibria_coexistence_state():
    eq = equilibria(ScaledParams(a1=F(1, 2), a2=F(1, 2), d=F(1)))
    assert eq.e4 == (F(2, 3), F(2, 3))


def test_equilibria_without_interior_state():
    assert equilibria(ScaledParams(a1=F(1, 2), a2=F(3), d=F(1))).e4 is None


def test_bistable_predicates_agree_after_scaling(random_bistable_unscaled):
    rng = np.random.default_rng(7)
    for _ in range(200):
        raw = random_bistable_unscaled(rng)
        scaled, _ = scale(raw)
        assert bis(raw) and bistable(scaled)


# ----------------------------------------------------------------------
# Scaling map
# ----------------------------------------------------------------------
def test_scale_golden():
    raw = UnscaledParams(d1=F(1), d2=F(2), sigma1=F(1), sigma2=F(1), c11=F(1), c12=F(2), c21=F(3), c22=F(1))
    scaled, mapping = scale(raw)
    assert (scaled.a1, scaled.a2, scaled.d, scaled.k) == (2, 3, 2, 1)
    assert mapping.q_factor == 1


def test_reaction_terms_transport_through_scale_map(random_bistable_unscaled):
    rng = np.random.default_rng(11)
    for _ in range(50):
        raw = random_bistable_unscaled(rng)
        scaled, mapping = scale(raw)
        u, v = rng.uniform(0, 2, size=2)
        f, g = mapping.field_to_scaled(*vector_field_unscaled(raw, u, v))
        fs, gs = vector_field_scaled(scaled, *mapping.state_to_scaled(u, v))
        assert f == pytest.approx(fs, rel=1e-12, abs=1e-14)
        assert g == pytest.approx(gs, rel=1e-12, abs=1e-14)


def test_semi_trivial_states_map_to_unit_states(random_bistable_unscaled):
    rng = np.random.default_rng(3)
    raw = random_bistable_unscaled(rng)
    _, mapping = scale(raw)
    left, right = semi_trivial_states(raw)
    assert mapping.state_to_scaled(*left) == pytest.approx((1.0, 0.0))
    assert mapping.state_to_scaled(*right) == pytest.approx((0.0, 1.0))


def test_speed_and_coordinates_invert():
    raw = UnscaledParams(d1=2.0, d2=1.0, sigma1=3.0, sigma2=1.0, c11=1.0, c12=4.0, c21=5.0, c22=1.0)
    _, mapping = scale(raw)
    assert mapping.theta_to_unscaled(mapping.theta_to_scaled(0.7)) == pytest.approx(0.7)
    assert mapping.x_to_unscaled(mapping.x_to_scaled(-3.5)) == pytest.approx(-3.5)
    assert mapping.theta_factor == pytest.approx(1 / math.sqrt(6.0))


# ----------------------------------------------------------------------
# Documents
# ----------------------------------------------------------------------
def test_parse_scaled_document(write_json):
    doc, raw = load_document(write_json("p.json", {"a1": 2, "a2": 3, "d": 2, "alpha": 17, "beta": 18}))
    assert detect_kind(doc) == "scaled"
    assert parse_scaled(doc) == ScaledParams(a1=2.0, a2=3.0, d=2.0)
    assert parse_weights(doc) == (17.0, 18.0)
    assert raw.startswith(b"{")


def test_unknown_key_is_rejected():
    with pytest.raises(ConfigError, match="unknown keys: gamma"):
        parse_scaled({"a1": 2, "a2": 3, "d": 1, "gamma": 1})


def test_missing_key_is_rejected():
    with pytest.raises(ConfigError, match="missing keys: d"):
        parse_scaled({"a1": 2, "a2": 3})


def test_weights_must_come_in_pairs():
    with pytest.raises(ConfigError):
        parse_weights({"alpha": 1})
    assert parse_weights({}) is None


def test_non_numeric_value_is_rejected():
    with pytest.raises(ConfigError):
        parse_unscaled({k: "1" for k in ("d1", "d2", "sigma1", "sigma2", "c11", "c12", "c21", "c22")})


def test_invalid_json(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{not json", encoding="utf-8")
    with pytest.raises(ConfigError):
        load_document(path)


def test_three_species_document(three_species_base):
    doc = three_species_base.to_dict()
    assert detect_kind(doc) == "three_species"
    assert parse_three_species(doc) == three_species_base
