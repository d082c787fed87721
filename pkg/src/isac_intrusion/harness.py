"""Trial orchestration, Monte-Carlo aggregation and result export.

One trial follows the detection/localization control flow:

1. draw whether an intruder is present, then a series of sweeps whose
   first ``mean_window`` samples are intruder-free history;
2. localize the anchor node from the averaged history RSS;
3. slide the coarse detector (row-mean drop against the trailing mean);
4. only after a coarse trigger, run fine detection on the triggering sweep
   and the ones after it, stopping at the first fine detection;
5. on fine detection, estimate bearing, range and position.
"""

from __future__ import annotations

import csv
import json
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

import numpy as np

from . import detector, localizer, ofdm, scenario
from .anchor import LocalizationFix, localize_anchor
from .detector import DetectionConfig, DetectionOutcome
from .errors import ConfigError
from .localizer import IntruderEstimate
from .scenario import BeamSweep, ScenarioConfig

log = logging.getLogger(__name__)

CORRECT = "correct_detection"
FALSE_ALARM = "false_alarm"
MISS = "miss"
TRUE_REJECTION = "true_rejection"


@dataclass(frozen=True)
class ExperimentConfig:
    """Monte-Carlo experiment settings.

    A trial with an intruder counts as a correct detection only when the
    estimated bearing is within ``angle_tolerance`` degrees of the truth.
    """

    scenario: ScenarioConfig = field(default_factory=ScenarioConfig)
    detection: DetectionConfig = field(default_factory=DetectionConfig)
    trials: int = 100
    intrusion_prevalence: float = 0.5
    angle_tolerance: float = 20.0
    seed: int = 0
    log_tx_energy: bool = False
    subcarriers: int = ofdm.DEFAULT_SUBCARRIERS

    def __post_init__(self):
        if self.trials < 1:
            raise ConfigError(f"trials must be >= 1, got {self.trials}")
        if not 0 <= self.intrusion_prevalence <= 1:
            raise ConfigError(f"intrusion_prevalence must be in [0, 1], got {self.intrusion_prevalence}")
        if not self.angle_tolerance > 0:
            raise ConfigError(f"angle_tolerance must be > 0, got {self.angle_tolerance}")
        if self.seed < 0:
            raise ConfigError(f"seed must be >= 0, got {self.seed}")
        if self.scenario.samples < self.detection.mean_window + 1:
            raise ConfigError(
                f"samples ({self.scenario.samples}) must exceed mean_window ({self.detection.mean_window})")


@dataclass
class TrialRecord:
    trial: int
    intruder_present: bool
    theta_true: float
    anchor_fix: LocalizationFix
    coarse: DetectionOutcome
    fine: Optional[DetectionOutcome] = None
    estimate: Optional[IntruderEstimate] = None
    outcome: str = TRUE_REJECTION
    sweeps: Optional[list[BeamSweep]] = None

    @property
    def detected(self) -> bool:
        return self.fine is not None and self.fine.detected

    @property
    def final(self) -> DetectionOutcome:
        return self.fine if self.fine is not None else self.coarse


@dataclass
class TrialMetrics:
    trials: int
    correct_detections: int
    false_alarms: int
    misses: int
    true_rejections: int
    accuracy: float
    fpr: float
    fnr: float
    angle_rmse_m: float
    cumulative_curves: dict[str, list]

    def to_dict(self) -> dict:
        return {
            "trials": self.trials,
            "correct_detections": self.correct_detections,
            "false_alarms": self.false_alarms,
            "misses": self.misses,
            "true_rejections": self.true_rejections,
            "accuracy": self.accuracy,
            "fpr": self.fpr,
            "fnr": self.fnr,
            "angle_rmse_m": self.angle_rmse_m,
        }


def trial_streams(seed: int, trial_index: int):
    """Independent (simulation, waveform) generators for one trial."""
    sim, wave = np.random.SeedSequence([seed, trial_index]).spawn(2)
    return np.random.default_rng(sim), np.random.default_rng(wave)


def _log_tx_energy(cfg: ExperimentConfig, rng, trial_index):
    for k in range(len(cfg.scenario.constellation)):
        sym = ofdm.ofdm_modulate(ofdm.random_qpsk(cfg.subcarriers, rng))
        log.debug("trial %d AP %d OFDM symbol energy %.12f", trial_index, k, sym.energy())


def _localize(sweep: BeamSweep, fine: DetectionOutcome, cfg: ExperimentConfig, anchor) -> IntruderEstimate:
    sc = cfg.scenario
    tau = cfg.detection.tau
    dev = detector.deviation_matrix(sweep)
    ap, mask = localizer.supra_threshold(dev, tau, fine.triggering_ap)
    angle = localizer.estimate_angle(dev, tau, ap)
    drop = localizer.observed_drop(sweep.rss[ap], mask)
    # a non-positive drop means only upward spikes crossed tau: treat as far
    rng = localizer.estimate_range(drop, sc.radio, sc) if drop > 0 else sc.distance_threshold
    return IntruderEstimate(angle, rng, localizer.estimate_position(anchor, angle, rng))


def run_trial(cfg: ExperimentConfig, trial_index: int, keep_sweeps: bool = False) -> TrialRecord:
    sc, det = cfg.scenario, cfg.detection
    rng, wave_rng = trial_streams(cfg.seed, trial_index)
    present = bool(rng.random() < cfg.intrusion_prevalence)
    series = scenario.generate_time_series(sc, rng, present, onset=det.mean_window)
    if cfg.log_tx_energy:
        _log_tx_energy(cfg, wave_rng, trial_index)

    history = detector.windowed_mean(series, det.mean_window, det.mean_window)
    fix = localize_anchor(sc.constellation, history, sc.radio)

    idx, coarse = detector.coarse_scan(series, det)
    rec = TrialRecord(trial_index, present, sc.intruder_angle, fix, coarse,
                      sweeps=series if keep_sweeps else None)
    if coarse.detected:
        for sweep in series[idx:]:
            rec.fine = detector.fine_detect(sweep, det)
            if rec.fine.detected:
                rec.estimate = _localize(sweep, rec.fine, cfg, fix.position)
                break

    if present:
        ok = rec.detected and scenario.circular_diff(rec.estimate.angle, sc.intruder_angle) <= cfg.angle_tolerance
        rec.outcome = CORRECT if ok else MISS
    else:
        rec.outcome = FALSE_ALARM if rec.detected else TRUE_REJECTION
    return rec


def _ratio(num, den):
    return num / den if den else 0.0


def summarize(records: list[TrialRecord]) -> TrialMetrics:
    counts = {CORRECT: 0, FALSE_ALARM: 0, MISS: 0, TRUE_REJECTION: 0}
    curves = {"trial_index": [], "cum_correct": [], "cum_false_alarms": [], "running_rmse_m": []}
    sq_arcs = []
    for rec in records:
        counts[rec.outcome] += 1
        if rec.intruder_present and rec.estimate is not None:
            arc = np.radians(scenario.circular_diff(rec.estimate.angle, rec.theta_true)) * rec.estimate.range
            sq_arcs.append(float(arc) ** 2)
        curves["trial_index"].append(rec.trial)
        curves["cum_correct"].append(counts[CORRECT] + counts[TRUE_REJECTION])
        curves["cum_false_alarms"].append(counts[FALSE_ALARM])
        curves["running_rmse_m"].append(float(np.sqrt(np.mean(sq_arcs))) if sq_arcs else 0.0)
    n = len(records)
    tp, fa, fn, tn = counts[CORRECT], counts[FALSE_ALARM], counts[MISS], counts[TRUE_REJECTION]
    return TrialMetrics(
        trials=n, correct_detections=tp, false_alarms=fa, misses=fn, true_rejections=tn,
        accuracy=_ratio(tp + tn, n), fpr=_ratio(fa, fa + tn), fnr=_ratio(fn, fn + tp),
        angle_rmse_m=curves["running_rmse_m"][-1] if n else 0.0,
        cumulative_curves=curves,
    )


def run_experiment(cfg: ExperimentConfig, keep_sweeps: bool = False):
    """Run every trial in index order; returns ``(metrics, records)``."""
    records = [run_trial(cfg, i, keep_sweeps) for i in range(cfg.trials)]
    return summarize(records), records


def _write_csv(path: Path, header, rows):
    try:
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(header)
            w.writerows(rows)
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc}") from exc


def export_results(metrics: TrialMetrics, records: list[TrialRecord], out_dir,
                   emit_sweeps: bool = False, config: Optional[dict] = None) -> list[Path]:
    """Write metrics.json, curves.csv, detections.csv, estimates.csv and optionally sweeps.csv."""
    out = Path(out_dir)
    try:
        out.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise OSError(f"cannot create output directory {out}: {exc}") from exc

    payload = metrics.to_dict()
    if config is not None:
        payload["config"] = config
    metrics_path = out / "metrics.json"
    try:
        metrics_path.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n")
    except OSError as exc:
        raise OSError(f"cannot write {metrics_path}: {exc}") from exc

    c = metrics.cumulative_curves
    written = [metrics_path]
    curves = out / "curves.csv"
    _write_csv(curves, ["trial_index", "cum_correct", "cum_false_alarms", "running_rmse_m"],
               zip(c["trial_index"], c["cum_correct"], c["cum_false_alarms"], c["running_rmse_m"]))
    detections = out / "detections.csv"
    _write_csv(detections, ["trial", "detected", "max_deviation_db", "ap", "angle_deg"],
               (r.final.csv_row(r.trial) for r in records))
    estimates = out / "estimates.csv"
    _write_csv(estimates, ["trial", "theta_true_deg", "theta_hat_deg", "range_hat_m", "x_hat", "y_hat"],
               (r.estimate.csv_row(r.trial, r.theta_true) for r in records if r.estimate is not None))
    written += [curves, detections, estimates]
    if emit_sweeps:
        sweeps = out / "sweeps.csv"

        def rows():
            for r in records:
                if r.sweeps is None:
                    raise ValueError("records were produced without keep_sweeps=True")
                for s in r.sweeps:
                    yield from scenario.sweep_rows(r.trial, s)

        _write_csv(sweeps, ["trial", "sample", "ap_index", "angle_deg", "rss_db"], rows())
        written.append(sweeps)
    return written
