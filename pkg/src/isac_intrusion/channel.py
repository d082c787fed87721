"""Radio propagation primitives.

Log-distance path loss around the free-space reference ``lambda / (4 pi)``,
a deterministic baseline RSS, Gaussian fading/shadowing draws in dB and the
analytic inverse RSS -> distance used for anchor trilateration.

All random draws take an explicit :class:`numpy.random.Generator`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigError, DegenerateDistance

__all__ = [
    "Position2D",
    "RadioConfig",
    "euclidean_distance",
    "path_loss_db",
    "baseline_rss",
    "rss_to_distance",
    "draw_fading",
    "draw_shadowing",
    "calibration_offset",
]


@dataclass(frozen=True)
class Position2D:
    """Planar coordinate in meters."""

    x: float
    y: float

    def __post_init__(self):
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise ValueError(f"non-finite position ({self.x}, {self.y})")

    def as_array(self) -> np.ndarray:
        return np.array([self.x, self.y], dtype=float)

    def __iter__(self):
        yield self.x
        yield self.y


def euclidean_distance(p: Position2D, q: Position2D) -> float:
    return math.hypot(p.x - q.x, p.y - q.y)


def _path_loss(d, wavelength, n):
    return 10.0 * n * math.log10(4.0 * math.pi * d / wavelength)


# Defaults for quantities the model leaves symbolic: 20 dBm transmit power,
# 2.4 GHz wavelength, -90 dB noise term.
DEFAULT_TX_POWER_DB = 20.0
DEFAULT_WAVELENGTH = 0.125
DEFAULT_PATH_LOSS_EXPONENT = 3.0
DEFAULT_NOISE_POWER_DB = -90.0
CALIBRATION_DISTANCE = 5.0
CALIBRATION_TARGET_DB = -38.5


def calibration_offset(
    target_db: float = CALIBRATION_TARGET_DB,
    distance: float = CALIBRATION_DISTANCE,
    transmit_power_db: float = DEFAULT_TX_POWER_DB,
    wavelength: float = DEFAULT_WAVELENGTH,
    path_loss_exponent: float = DEFAULT_PATH_LOSS_EXPONENT,
    noise_power_db: float = DEFAULT_NOISE_POWER_DB,
) -> float:
    """Offset (dB) that puts the uncalibrated baseline RSS at ``distance`` on ``target_db``."""
    raw = transmit_power_db - _path_loss(distance, wavelength, path_loss_exponent) + noise_power_db
    return target_db - raw


DEFAULT_CALIBRATION_OFFSET_DB = calibration_offset()


@dataclass(frozen=True)
class RadioConfig:
    """Link budget and noise parameters, all in dB except ``wavelength`` (m).

    ``calibration_offset_db`` is a constant added to every baseline RSS; the
    default lands the 5 m baseline at about -38.5 dB. Set it to 0 for the raw
    ``P_t - PL(d) + noise`` budget.
    """

    transmit_power_db: float = DEFAULT_TX_POWER_DB
    wavelength: float = DEFAULT_WAVELENGTH
    path_loss_exponent: float = DEFAULT_PATH_LOSS_EXPONENT
    sigma_fading: float = 1.5
    sigma_shadowing: float = 1.0
    noise_power_db: float = DEFAULT_NOISE_POWER_DB
    calibration_offset_db: float = field(default=DEFAULT_CALIBRATION_OFFSET_DB)

    def __post_init__(self):
        if not self.wavelength > 0:
            raise ConfigError(f"wavelength must be > 0, got {self.wavelength}")
        if not self.path_loss_exponent >= 1:
            raise ConfigError(f"path_loss_exponent must be >= 1, got {self.path_loss_exponent}")
        if not self.sigma_fading >= 0:
            raise ConfigError(f"sigma_fading must be >= 0, got {self.sigma_fading}")
        if not self.sigma_shadowing >= 0:
            raise ConfigError(f"sigma_shadowing must be >= 0, got {self.sigma_shadowing}")

    @property
    def reference_distance(self) -> float:
        """Distance at which the path loss is 0 dB."""
        return self.wavelength / (4.0 * math.pi)

    @property
    def zero_loss_rss(self) -> float:
        """RSS at the reference distance (no path loss)."""
        return self.transmit_power_db + self.noise_power_db + self.calibration_offset_db


def path_loss_db(d: float, cfg: RadioConfig) -> float:
    """Path loss ``10 n log10(4 pi d / lambda)`` in dB."""
    if not d > 0:
        raise DegenerateDistance(f"path loss requires d > 0, got {d}")
    return _path_loss(d, cfg.wavelength, cfg.path_loss_exponent)


def baseline_rss(ap: Position2D, an: Position2D, cfg: RadioConfig) -> float:
    d = euclidean_distance(ap, an)
    if d == 0:
        raise DegenerateDistance(f"AP and AN coincide at ({ap.x}, {ap.y})")
    return cfg.zero_loss_rss - path_loss_db(d, cfg)


def rss_to_distance(rss: float, cfg: RadioConfig) -> float:
    """Invert :func:`baseline_rss` for the link distance in meters."""
    return cfg.reference_distance * 10.0 ** ((cfg.zero_loss_rss - rss) / (10.0 * cfg.path_loss_exponent))


def _gaussian(sigma, rng, size):
    # Always consume the draw so streams stay aligned across sigma values.
    z = rng.standard_normal(size)
    if sigma == 0:
        return 0.0 if size is None else np.zeros(size)
    return sigma * z


def draw_fading(cfg: RadioConfig, rng: np.random.Generator, size=None):
    """Multipath fading term ``F ~ N(0, sigma_fading^2)`` in dB."""
    return _gaussian(cfg.sigma_fading, rng, size)


def draw_shadowing(cfg: RadioConfig, rng: np.random.Generator, size=None):
    """Obstacle shadowing term ``S ~ N(0, sigma_shadowing^2)`` in dB."""
    return _gaussian(cfg.sigma_shadowing, rng, size)
