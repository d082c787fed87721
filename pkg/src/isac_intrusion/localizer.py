"""Intruder bearing, range and position from a detected sweep."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .channel import Position2D, RadioConfig
from .errors import EmptyInput, InvalidDrop, InvalidRange, NoCellAboveThreshold
from .scenario import ScenarioConfig, circular_diff

MIN_RANGE = 0.1


@dataclass(frozen=True)
class IntruderEstimate:
    angle: float
    range: float
    position: Position2D

    def csv_row(self, trial: int, theta_true: float):
        return trial, theta_true, self.angle, self.range, self.position.x, self.position.y


def circular_mean_deg(angles) -> float:
    """Mean direction in [0, 360) of angles given in degrees."""
    a = np.radians(np.asarray(angles, dtype=float))
    if a.size == 0:
        raise EmptyInput("circular mean of no angles")
    m = math.degrees(math.atan2(np.sin(a).sum(), np.cos(a).sum()))
    # snap float noise so that symmetric sets land on their exact center
    m = round(m % 360.0, 9)
    return 0.0 if m >= 360.0 else m


def supra_threshold(dev: np.ndarray, tau: float, ap: Optional[int] = None):
    """Row used for localization and the boolean mask of its cells above ``tau``.

    Without ``ap`` the row holding the global maximum is used (lowest index on ties).
    """
    dev = np.asarray(dev, dtype=float)
    if ap is None:
        ap = int(np.argmax(dev)) // dev.shape[1]
    mask = dev[ap] > tau
    if not mask.any():
        raise NoCellAboveThreshold(f"no deviation above {tau} dB on AP {ap}")
    return ap, mask


def estimate_angle(dev: np.ndarray, tau: float, ap: Optional[int] = None) -> float:
    """Circular mean bearing (degrees) of the supra-threshold cells on the triggering row."""
    ap, mask = supra_threshold(dev, tau, ap)
    angles = np.arange(mask.size) * (360.0 / mask.size)
    return circular_mean_deg(angles[mask])


def observed_drop(row: np.ndarray, mask: np.ndarray) -> float:
    """Mean RSS outside the supra-threshold cells minus the mean inside them."""
    row = np.asarray(row, dtype=float)
    if mask.all():
        raise InvalidDrop("every cell is above threshold; no reference level")
    return float(row[~mask].mean() - row[mask].mean())


def estimate_range(observed_drop: float, cfg: RadioConfig, scenario: ScenarioConfig) -> float:
    """Map an in-window RSS drop to intruder range with a log-distance law.

    A drop of exactly ``delta_rss`` maps to ``reference_obstruction_distance``;
    each further ``10 n log10(2)`` dB halves the range. Clamped to
    ``[0.1, distance_threshold]``.
    """
    if not observed_drop > 0:
        raise InvalidDrop(f"drop must be > 0 dB, got {observed_drop}")
    excess = observed_drop - scenario.delta_rss
    r = scenario.reference_obstruction_distance * 10.0 ** (-excess / (10.0 * cfg.path_loss_exponent))
    return min(max(r, MIN_RANGE), scenario.distance_threshold)


def estimate_position(anchor: Position2D, angle: float, range: float) -> Position2D:
    if not range > 0:
        raise InvalidRange(f"range must be > 0, got {range}")
    t = math.radians(angle)
    return Position2D(anchor.x + range * math.cos(t), anchor.y + range * math.sin(t))


def rmse_meters(errors: Sequence[tuple[float, float]], range) -> float:
    """RMS arc-length error of (true, estimated) bearing pairs.

    ``range`` is one radius for all pairs or a sequence with one per pair.
    """
    if len(errors) == 0:
        raise EmptyInput("no bearing pairs")
    pairs = np.asarray(errors, dtype=float).reshape(-1, 2)
    r = np.broadcast_to(np.asarray(range, dtype=float), (len(pairs),))
    if not np.all(r > 0):
        raise InvalidRange("range must be > 0")
    arc = np.radians(circular_diff(pairs[:, 1], pairs[:, 0])) * r
    return float(np.sqrt(np.mean(arc ** 2)))
