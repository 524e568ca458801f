from __future__ import annotations

import json
from fractions import Fraction as F

import pytest

from nbarrier.barrier import Weights
from nbarrier.model import ScaledParams, ThreeSpeciesParams, UnscaledParams


@pytest.fixture(autouse=True)
def _clean_env(monkeypatch):
    for name in ("NBARRIER_OUT", "NBARRIER_SEED", "LOG_LEVEL"):
        monkeypatch.delenv(name, raising=False)


@pytest.fixture
def worked_example():
    """a1=2, a2=3, d=2, k=1 with weights (17, 18)."""
    return ScaledParams(a1=2.0, a2=3.0, d=2.0, k=1.0), Weights(17.0, 18.0)


@pytest.fixture
def exact_example():
    return ScaledParams(a1=F(2), a2=F(3), d=F(2), k=F(1)), Weights(F(17), F(18))


@pytest.fixture
def random_bistable_unscaled():
    """Factory drawing raw parameters whose scaled a1, a2 lie in (1.1, 5)."""

    def _draw(rng):
        sigma1, sigma2, c11, c22, d1, d2 = rng.uniform(0.5, 2.0, size=6)
        a1, a2 = rng.uniform(1.1, 5.0, size=2)
        return UnscaledParams(
            d1=d1,
            d2=d2,
            sigma1=sigma1,
            sigma2=sigma2,
            c11=c11,
            c12=a1 * c22 * sigma1 / sigma2,
            c21=a2 * c11 * sigma2 / sigma1,
            c22=c22,
        )

    return _draw


@pytest.fixture
def three_species_base():
    return ThreeSpeciesParams(
        d1=1.0, d2=1.0, d3=1.0,
        sigma1=1.0, sigma2=1.0, sigma3=0.01,
        c11=1.0, c12=2.0, c13=1.0,
        c21=2.0, c22=1.0, c23=1.0,
        c31=1.0, c32=1.0, c33=1.0,
    )


@pytest.fixture
def write_json(tmp_path):
    def _write(name, doc):
        path = tmp_path / name
        path.write_text(json.dumps(doc), encoding="utf-8")
        return path

    return _write
