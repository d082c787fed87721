"""Synthetic beam-sweep RSS for the no-intrusion and intrusion scenarios.

A sweep is a ``K x A`` matrix: one row per AP, one column per sweep bearing
``j * 360 / A`` degrees measured at the anchor node. Every cell is the
link's baseline RSS plus independent fading and shadowing draws. When an
intruder obstructs an AP link, cells whose bearing lies inside the angular
window around the intruder bearing lose ``delta_rss`` dB.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .anchor import ApConstellation
from .channel import Position2D, RadioConfig, baseline_rss, draw_fading, draw_shadowing, euclidean_distance
from .errors import ConfigError

GATE_MODES = ("path", "literal")
PROFILES = ("step", "raised_cosine")

TABLE1_ANCHOR = Position2D(5.0, 5.0)
TABLE1_AP_RADIUS = 5.0
TABLE1_AP_BEARINGS = (0.0, 120.0, 240.0)


def table1_constellation(anchor: Position2D = TABLE1_ANCHOR) -> ApConstellation:
    """Three APs, each 5 m from ``anchor``."""
    return ApConstellation.ring(anchor, TABLE1_AP_RADIUS, TABLE1_AP_BEARINGS)


def circular_diff(a, b):
    """Absolute angular separation in degrees, in [0, 180]."""
    return np.abs((np.asarray(a, dtype=float) - b + 180.0) % 360.0 - 180.0)


@dataclass(frozen=True)
class ScenarioConfig:
    """Geometry, intruder ground truth and sweep parameters.

    ``gate_mode="path"`` applies the obstruction to an AP when the intruder is
    within ``distance_threshold`` of the anchor-AP segment; ``"literal"``
    compares the anchor-AP distance itself against the threshold.
    ``reference_obstruction_distance`` is the range the localizer assigns to
    a drop of exactly ``delta_rss``.
    """

    constellation: ApConstellation = field(default_factory=table1_constellation)
    anchor: Position2D = TABLE1_ANCHOR
    sweep_resolution: int = 360
    intruder_angle: float = 120.0
    intruder_distance: float = 3.0
    delta_rss: float = 10.0
    distance_threshold: float = 2.5
    angular_window_halfwidth: float = 10.0
    samples: int = 11
    radio: RadioConfig = field(default_factory=RadioConfig)
    gate_mode: str = "path"
    profile: str = "step"
    reference_obstruction_distance: float = 2.0

    def __post_init__(self):
        if self.sweep_resolution < 8:
            raise ConfigError(f"sweep_resolution must be >= 8, got {self.sweep_resolution}")
        if not 0 <= self.intruder_angle < 360:
            raise ConfigError(f"intruder_angle must be in [0, 360), got {self.intruder_angle}")
        if not self.intruder_distance > 0:
            raise ConfigError(f"intruder_distance must be > 0, got {self.intruder_distance}")
        if not self.delta_rss >= 0:
            raise ConfigError(f"delta_rss must be >= 0, got {self.delta_rss}")
        if not self.distance_threshold > 0:
            raise ConfigError(f"distance_threshold must be > 0, got {self.distance_threshold}")
        if not 0 < self.angular_window_halfwidth < 90:
            raise ConfigError(f"angular_window_halfwidth must be in (0, 90), got {self.angular_window_halfwidth}")
        if self.samples < 1:
            raise ConfigError(f"samples must be >= 1, got {self.samples}")
        if self.gate_mode not in GATE_MODES:
            raise ConfigError(f"gate_mode must be one of {GATE_MODES}, got {self.gate_mode!r}")
        if self.profile not in PROFILES:
            raise ConfigError(f"profile must be one of {PROFILES}, got {self.profile!r}")
        if not self.reference_obstruction_distance > 0:
            raise ConfigError("reference_obstruction_distance must be > 0")

    @property
    def angles(self) -> np.ndarray:
        return np.arange(self.sweep_resolution) * (360.0 / self.sweep_resolution)

    @property
    def intruder_position(self) -> Position2D:
        t = math.radians(self.intruder_angle)
        return Position2D(self.anchor.x + self.intruder_distance * math.cos(t),
                          self.anchor.y + self.intruder_distance * math.sin(t))

    def baseline_levels(self) -> np.ndarray:
        """Deterministic baseline RSS of each AP->anchor link."""
        return np.array([baseline_rss(ap, self.anchor, self.radio) for ap in self.constellation.positions])


@dataclass(frozen=True)
class BeamSweep:
    rss: np.ndarray
    sample_index: int = 0

    def __post_init__(self):
        rss = np.asarray(self.rss, dtype=float)
        if rss.ndim != 2:
            raise ValueError("sweep must be a K x A matrix")
        if not np.all(np.isfinite(rss)):
            raise ValueError("sweep contains non-finite RSS")
        object.__setattr__(self, "rss", rss)

    @property
    def n_aps(self) -> int:
        return self.rss.shape[0]

    @property
    def n_angles(self) -> int:
        return self.rss.shape[1]

    @property
    def angles(self) -> np.ndarray:
        return np.arange(self.n_angles) * (360.0 / self.n_angles)


def point_segment_distance(p: Position2D, a: Position2D, b: Position2D) -> float:
    ax, ay = b.x - a.x, b.y - a.y
    seg2 = ax * ax + ay * ay
    if seg2 == 0:
        return euclidean_distance(p, a)
    u = min(1.0, max(0.0, ((p.x - a.x) * ax + (p.y - a.y) * ay) / seg2))
    return math.hypot(p.x - (a.x + u * ax), p.y - (a.y + u * ay))


def gated_aps(cfg: ScenarioConfig) -> np.ndarray:
    """Boolean mask over APs whose link the intruder obstructs."""
    if cfg.gate_mode == "literal":
        d = [euclidean_distance(cfg.anchor, ap) for ap in cfg.constellation.positions]
    else:
        p = cfg.intruder_position
        d = [point_segment_distance(p, cfg.anchor, ap) for ap in cfg.constellation.positions]
    return np.asarray(d) < cfg.distance_threshold


def window_weights(cfg: ScenarioConfig) -> np.ndarray:
    """Per-bearing fraction of ``delta_rss`` applied, inside the angular window."""
    diff = circular_diff(cfg.angles, cfg.intruder_angle)
    half = cfg.angular_window_halfwidth
    inside = diff <= half + 1e-9
    if cfg.profile == "step":
        return inside.astype(float)
    return np.where(inside, 0.5 * (1.0 + np.cos(np.pi * np.minimum(diff, half) / half)), 0.0)


def attenuation(cfg: ScenarioConfig) -> np.ndarray:
    """``K x A`` matrix of dB subtracted by the intruder (zero on unaffected cells)."""
    return cfg.delta_rss * np.outer(gated_aps(cfg), window_weights(cfg))


def _noisy(cfg: ScenarioConfig, rng: np.random.Generator) -> np.ndarray:
    shape = (len(cfg.constellation), cfg.sweep_resolution)
    fading = draw_fading(cfg.radio, rng, shape)
    shadowing = draw_shadowing(cfg.radio, rng, shape)
    return cfg.baseline_levels()[:, None] + fading + shadowing


def generate_baseline_sweep(cfg: ScenarioConfig, rng: np.random.Generator, sample_index: int = 0) -> BeamSweep:
    return BeamSweep(_noisy(cfg, rng), sample_index)


def generate_intrusion_sweep(cfg: ScenarioConfig, rng: np.random.Generator, sample_index: int = 0) -> BeamSweep:
    # Consumes the stream exactly like the baseline generator.
    return BeamSweep(_noisy(cfg, rng) - attenuation(cfg), sample_index)


def generate_time_series(cfg: ScenarioConfig, rng: np.random.Generator, with_intruder: bool,
                         onset: int = 0) -> list[BeamSweep]:
    """``cfg.samples`` independent sweeps; with an intruder, those from ``onset`` on are obstructed."""
    out = []
    for i in range(cfg.samples):
        gen = generate_intrusion_sweep if with_intruder and i >= onset else generate_baseline_sweep
        out.append(gen(cfg, rng, i))
    return out


def sweep_rows(trial: int, sweep: BeamSweep):
    """CSV rows ``(trial, sample, ap_index, angle_deg, rss_db)``."""
    angles = sweep.angles
    for i in range(sweep.n_aps):
        for j in range(sweep.n_angles):
            yield trial, sweep.sample_index, i, float(angles[j]), float(sweep.rss[i, j])
