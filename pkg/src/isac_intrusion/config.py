"""Flat YAML configuration mirroring the experiment's field names.

Every leaf field of :class:`ExperimentConfig` and its nested scenario,
detection and radio configs appears as a top-level key, e.g.::

    trials: 100
    seed: 7
    tau: 5.0
    sigma_fading: 1.5
    anchor: [5.0, 5.0]
    constellation: [[10.0, 5.0], [2.5, 9.33], [2.5, 0.67]]
"""

from __future__ import annotations

import dataclasses
from pathlib import Path
from typing import Any, Mapping

import yaml

from .anchor import ApConstellation
from .channel import Position2D, RadioConfig
from .detector import DetectionConfig
from .errors import ConfigError, IsacError
from .harness import ExperimentConfig
from .scenario import ScenarioConfig

_NESTED = {"scenario", "detection", "radio"}


def _names(cls):
    return [f.name for f in dataclasses.fields(cls) if f.name not in _NESTED]


RADIO_KEYS = _names(RadioConfig)
DETECTION_KEYS = _names(DetectionConfig)
SCENARIO_KEYS = _names(ScenarioConfig)
EXPERIMENT_KEYS = _names(ExperimentConfig)
ALL_KEYS = frozenset(RADIO_KEYS + DETECTION_KEYS + SCENARIO_KEYS + EXPERIMENT_KEYS)


def _convert(key, value):
    if key == "anchor":
        return Position2D(*map(float, value))
    if key == "constellation":
        return ApConstellation(tuple(Position2D(*map(float, p)) for p in value))
    return value


def from_flat(values: Mapping[str, Any]) -> ExperimentConfig:
    """Build and validate an :class:`ExperimentConfig` from a flat mapping.

    Unknown keys and invalid values raise :class:`ConfigError`.
    """
    unknown = sorted(set(values) - ALL_KEYS)
    if unknown:
        raise ConfigError(f"unknown configuration keys: {', '.join(unknown)}")

    def pick(keys):
        return {k: _convert(k, values[k]) for k in keys if k in values and values[k] is not None}

    try:
        radio = RadioConfig(**pick(RADIO_KEYS))
        sc = ScenarioConfig(radio=radio, **pick(SCENARIO_KEYS))
        det = DetectionConfig(**pick(DETECTION_KEYS))
        return ExperimentConfig(scenario=sc, detection=det, **pick(EXPERIMENT_KEYS))
    except ConfigError:
        raise
    except (IsacError, TypeError, ValueError) as exc:
        raise ConfigError(str(exc)) from exc


def to_flat(cfg: ExperimentConfig) -> dict:
    """Inverse of :func:`from_flat`, with plain JSON/YAML-friendly values."""
    out = {}
    for obj, keys in ((cfg.scenario.radio, RADIO_KEYS), (cfg.scenario, SCENARIO_KEYS),
                      (cfg.detection, DETECTION_KEYS), (cfg, EXPERIMENT_KEYS)):
        for k in keys:
            out[k] = getattr(obj, k)
    out["anchor"] = [cfg.scenario.anchor.x, cfg.scenario.anchor.y]
    out["constellation"] = [[p.x, p.y] for p in cfg.scenario.constellation.positions]
    return out


def load_config(path) -> dict:
    """Read a flat YAML mapping (not yet validated)."""
    try:
        data = yaml.safe_load(Path(path).read_text())
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    except yaml.YAMLError as exc:
        raise ConfigError(f"cannot parse config {path}: {exc}") from exc
    if data is None:
        return {}
    if not isinstance(data, dict):
        raise ConfigError(f"config {path} must be a key-value mapping")
    return data
