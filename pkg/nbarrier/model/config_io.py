"""
Strict JSON parameter documents.

A document is a flat JSON object whose keys are exactly the field names of
one parameter container, optionally with the weights ``alpha`` and ``beta``.
Unknown or missing keys raise :class:`~nbarrier.errors.ConfigError`.
"""
from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Dict, Mapping, Optional, Tuple

from ..errors import ConfigError
from .params import ScaledParams, ThreeSpeciesParams, UnscaledParams

WEIGHT_KEYS = ("alpha", "beta")
SCALED_REQUIRED = ("a1", "a2", "d")
SCALED_OPTIONAL = ("k", "theta")
UNSCALED_KEYS = ("d1", "d2", "sigma1", "sigma2", "c11", "c12", "c21", "c22")
THREE_SPECIES_KEYS = ThreeSpeciesParams.field_names()


def load_document(path: str | Path) -> Tuple[Dict[str, Any], bytes]:
    """Read a JSON object from ``path``; returns the mapping and the raw bytes."""
    try:
        raw = Path(path).read_bytes()
    except OSError as e:
        raise ConfigError(f"cannot read config {path}: {e}") from e
    try:
        doc = json.loads(raw.decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as e:
        raise ConfigError(f"config {path} is not valid JSON: {e}") from e
    if not isinstance(doc, dict):
        raise ConfigError(f"config {path} must contain a JSON object")
    return doc, raw


def detect_kind(doc: Mapping[str, Any]) -> str:
    """Return ``"scaled"``, ``"unscaled"`` or ``"three_species"``."""
    if "a1" in doc or "a2" in doc:
        return "scaled"
    if any(key in doc for key in ("d3", "sigma3", "c13", "c23", "c31", "c32", "c33")):
        return "three_species"
    if any(key in doc for key in UNSCALED_KEYS):
        return "unscaled"
    raise ConfigError("cannot tell which parameter set the document describes")


def _numbers(doc: Mapping[str, Any], allowed: Tuple[str, ...], required: Tuple[str, ...]) -> Dict[str, float]:
    unknown = sorted(set(doc) - set(allowed))
    if unknown:
        raise ConfigError(f"unknown keys: {', '.join(unknown)}")
    missing = [key for key in required if key not in doc]
    if missing:
        raise ConfigError(f"missing keys: {', '.join(missing)}")
    values: Dict[str, float] = {}
    for key, value in doc.items():
        if value is None and key == "theta":
            continue
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise ConfigError(f"{key} must be a number, got {value!r}")
        values[key] = float(value)
    return values


def parse_scaled(doc: Mapping[str, Any]) -> ScaledParams:
    values = _numbers(doc, SCALED_REQUIRED + SCALED_OPTIONAL + WEIGHT_KEYS, SCALED_REQUIRED)
    return ScaledParams(**{k: v for k, v in values.items() if k not in WEIGHT_KEYS})


def parse_unscaled(doc: Mapping[str, Any]) -> UnscaledParams:
    values = _numbers(doc, UNSCALED_KEYS + WEIGHT_KEYS, UNSCALED_KEYS)
    return UnscaledParams(**{k: v for k, v in values.items() if k not in WEIGHT_KEYS})


def parse_three_species(doc: Mapping[str, Any]) -> ThreeSpeciesParams:
    values = _numbers(doc, THREE_SPECIES_KEYS, THREE_SPECIES_KEYS)
    return ThreeSpeciesParams(**values)


def parse_weights(doc: Mapping[str, Any]) -> Optional[Tuple[float, float]]:
    """``(alpha, beta)`` when both are present, ``None`` when neither is."""
    present = [key for key in WEIGHT_KEYS if key in doc]
    if not present:
        return None
    if len(present) != 2:
        raise ConfigError("alpha and beta must be given together")
    for key in WEIGHT_KEYS:
        if isinstance(doc[key], bool) or not isinstance(doc[key], (int, float)):
            raise ConfigError(f"{key} must be a number, got {doc[key]!r}")
    return float(doc["alpha"]), float(doc["beta"])
