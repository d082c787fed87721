"""Coarse (windowed-mean) and fine (beam-sweep deviation) intrusion detection."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .errors import ConfigError, SeriesTooShort
from .scenario import BeamSweep


@dataclass(frozen=True)
class DetectionConfig:
    """Thresholds in dB.

    ``tau`` gates the per-cell deviation of the fine stage; ``coarse_tau``
    gates the drop of a per-AP sweep mean against its trailing average over
    ``mean_window`` earlier sweeps.
    """

    tau: float = 5.0
    coarse_tau: float = 0.3
    mean_window: int = 10

    def __post_init__(self):
        if not self.tau > 0:
            raise ConfigError(f"tau must be > 0, got {self.tau}")
        if not self.coarse_tau > 0:
            raise ConfigError(f"coarse_tau must be > 0, got {self.coarse_tau}")
        if self.mean_window < 1:
            raise ConfigError(f"mean_window must be >= 1, got {self.mean_window}")


@dataclass(frozen=True)
class DetectionOutcome:
    detected: bool
    max_deviation: float
    triggering_ap: Optional[int] = None
    triggering_angle: Optional[float] = None

    def csv_row(self, trial: int):
        return (trial, int(self.detected), self.max_deviation,
                "" if self.triggering_ap is None else self.triggering_ap,
                "" if self.triggering_angle is None else self.triggering_angle)


def _outcome(value: float, threshold: float, ap: int, angle: float) -> DetectionOutcome:
    if value > threshold:
        return DetectionOutcome(True, value, ap, angle)
    return DetectionOutcome(False, value)


def rss_vector(sweep: BeamSweep) -> np.ndarray:
    """Per-AP RSS of one sample: the mean over all sweep bearings."""
    return sweep.rss.mean(axis=1)


def windowed_mean(series: Sequence[BeamSweep], i: int, window: int) -> np.ndarray:
    """Average RSS vector over the ``window`` samples preceding index ``i``."""
    if i - window < 0:
        raise SeriesTooShort(f"index {i} has fewer than {window} preceding samples")
    return np.mean([rss_vector(s) for s in series[i - window:i]], axis=0)


def deviation_matrix(sweep: BeamSweep) -> np.ndarray:
    """|RSS(i, j) - mean_j RSS(i, :)| for every AP row ``i``."""
    rss = sweep.rss
    return np.abs(rss - rss.mean(axis=1, keepdims=True))


def coarse_detect(series: Sequence[BeamSweep], cfg: DetectionConfig) -> DetectionOutcome:
    """Compare the latest sample against the trailing mean of the ``mean_window`` before it.

    Only drops count. ``max_deviation`` is the largest per-AP drop; the
    triggering angle is the bearing of that AP's lowest cell relative to
    its trailing level.
    """
    if len(series) < cfg.mean_window + 1:
        raise SeriesTooShort(f"need {cfg.mean_window + 1} sweeps, got {len(series)}")
    last = len(series) - 1
    reference = windowed_mean(series, last, cfg.mean_window)
    latest = series[last]
    drop = reference - rss_vector(latest)
    ap = int(np.argmax(drop))
    angle = float(latest.angles[int(np.argmin(latest.rss[ap]))])
    return _outcome(float(drop[ap]), cfg.coarse_tau, ap, angle)


def coarse_scan(series: Sequence[BeamSweep], cfg: DetectionConfig):
    """Slide coarse detection along the series; return ``(index, outcome)`` of the first trigger.

    Returns the last evaluated index and its untriggered outcome when nothing fires.
    """
    if len(series) < cfg.mean_window + 1:
        raise SeriesTooShort(f"need {cfg.mean_window + 1} sweeps, got {len(series)}")
    for i in range(cfg.mean_window, len(series)):
        outcome = coarse_detect(series[i - cfg.mean_window:i + 1], cfg)
        if outcome.detected:
            return i, outcome
    return i, outcome


def fine_detect(sweep: BeamSweep, cfg: DetectionConfig) -> DetectionOutcome:
    """Trigger when any cell's deviation strictly exceeds ``tau``.

    Ties at the maximum resolve to the lowest AP index, then the lowest bearing.
    """
    dev = deviation_matrix(sweep)
    flat = int(np.argmax(dev))
    ap, j = divmod(flat, dev.shape[1])
    return _outcome(float(dev[ap, j]), cfg.tau, ap, float(sweep.angles[j]))
