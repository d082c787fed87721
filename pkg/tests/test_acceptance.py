"""Exit criteria for the simulator, one test per criterion.

Each test records a PASS/FAIL line that is printed in the pytest terminal
summary under "acceptance criteria".
"""

import math
import time
from dataclasses import replace

import numpy as np
import pytest

from isac_intrusion.anchor import ApConstellation, localize_anchor, trilaterate
from isac_intrusion.channel import Position2D, RadioConfig, baseline_rss, rss_to_distance
from isac_intrusion.detector import DetectionConfig, deviation_matrix, fine_detect
from isac_intrusion.harness import ExperimentConfig, export_results, run_experiment
from isac_intrusion.ofdm import SubcarrierSymbols, ofdm_demodulate, ofdm_modulate
from isac_intrusion.scenario import BeamSweep, ScenarioConfig, generate_baseline_sweep, generate_intrusion_sweep

RESULTS = []


def record(name, ok, detail):
    RESULTS.append((name, bool(ok), detail))
    print(f"{'PASS' if ok else 'FAIL'}  {name}: {detail}")
    assert ok, f"{name}: {detail}"


def quiet_experiment(**kw):
    radio = RadioConfig(sigma_fading=0.0, sigma_shadowing=0.0)
    return ExperimentConfig(scenario=ScenarioConfig(radio=radio), **kw)


def calibrated_experiment(**kw):
    # documented defaults: sigma_f = 1.5 dB, sigma_s = 1.0 dB, tau = 5 dB, 100 trials
    return ExperimentConfig(**kw)


def test_c1_noiseless_oracle_suite():
    t0 = time.perf_counter()
    cfg = quiet_experiment(trials=100, seed=0)
    sc = cfg.scenario

    rss = [baseline_rss(ap, sc.anchor, sc.radio) for ap in sc.constellation.positions]
    fix = localize_anchor(sc.constellation, rss, sc.radio)
    an_err = math.dist((fix.position.x, fix.position.y), (sc.anchor.x, sc.anchor.y))

    dev = deviation_matrix(generate_intrusion_sweep(sc, np.random.default_rng(0)))
    w = 21
    closed = sc.delta_rss * (1 - w / sc.sweep_resolution)
    dev_err = float(np.max(np.abs(dev[1, 110:131] - closed)))

    m, recs = run_experiment(cfg)
    angles = {r.estimate.angle for r in recs if r.estimate is not None}
    elapsed = time.perf_counter() - t0
    ok = (an_err <= 1e-6 and dev_err <= 1e-12 and m.accuracy == 1.0 and m.fpr == 0.0 and m.fnr == 0.0
          and angles == {120.0} and m.angle_rmse_m == 0.0 and elapsed < 1.0)
    record("C1 noiseless oracle suite", ok,
           f"AN err={an_err:.1e} m, dev err={dev_err:.1e}, acc={m.accuracy}, fpr={m.fpr}, fnr={m.fnr}, "
           f"theta_hat={sorted(angles)}, rmse={m.angle_rmse_m}, {elapsed:.2f} s")


def test_c2_paper_scale_monte_carlo():
    t0 = time.perf_counter()
    m, _ = run_experiment(calibrated_experiment(trials=100, seed=0))
    elapsed = time.perf_counter() - t0
    ok = m.accuracy >= 0.90 and m.fpr < 0.05 and m.fnr <= 0.05 and elapsed < 10.0
    record("C2 paper-scale Monte Carlo", ok,
           f"accuracy={m.accuracy:.3f} (>=0.90), fpr={m.fpr:.3f} (<0.05), fnr={m.fnr:.3f} (<=0.05), "
           f"{elapsed:.2f} s (<10 s)")


def test_c3_cumulative_counts_at_trial_50():
    passing = []
    for seed in range(5):
        m, _ = run_experiment(calibrated_experiment(trials=100, seed=seed))
        c = m.cumulative_curves
        correct, false_alarms = c["cum_correct"][49], c["cum_false_alarms"][49]
        passing.append(correct > 40 and false_alarms < 10)
    record("C3 cumulative counts at trial 50", sum(passing) >= 4,
           f"{sum(passing)}/5 seeds with cum_correct > 40 and cum_false_alarms < 10 (need >= 4)")


def test_c4_baseline_calibration():
    rss = baseline_rss(Position2D(0, 0), Position2D(5, 0), RadioConfig())
    record("C4 baseline RSS at 5 m", abs(rss + 39.0) <= 3.0, f"{rss:.3f} dB (target -39 +/- 3)")


def test_c5_property_suites():
    t0 = time.perf_counter()
    rng = np.random.default_rng(5)
    checks = {}

    worst = 0.0
    for n in (16, 64, 256):
        for _ in range(50):
            x = SubcarrierSymbols(rng.standard_normal(n) + 1j * rng.standard_normal(n))
            y = ofdm_modulate(x)
            worst = max(worst, float(np.max(np.abs(ofdm_demodulate(y).values - x.values))),
                        abs(float(np.sum(np.abs(x.values) ** 2) - np.sum(np.abs(y.samples) ** 2))))
    checks["ofdm round trip + Parseval"] = (worst <= 1e-9, f"{worst:.1e}")

    cfg = RadioConfig()
    d = rng.uniform(0.01, 1000, 1000)
    rel = max(abs(rss_to_distance(baseline_rss(Position2D(0, 0), Position2D(x, 0), cfg), cfg) - x) / x for x in d)
    checks["rss->distance inverse"] = (rel <= 1e-9, f"{rel:.1e}")

    worst = 0.0
    for _ in range(100):
        pts = rng.uniform(-20, 20, (4, 2))
        try:
            aps = ApConstellation(tuple(Position2D(*p) for p in pts))
        except ValueError:
            continue
        dist = np.linalg.norm(pts - rng.uniform(-10, 10, 2), axis=1) + rng.uniform(0, 0.5, 4)
        shift = rng.uniform(-100, 100, 2)
        moved = ApConstellation(tuple(Position2D(*(p + shift)) for p in pts))
        a, b = trilaterate(aps, dist).position, trilaterate(moved, dist).position
        worst = max(worst, abs(b.x - a.x - shift[0]), abs(b.y - a.y - shift[1]))
    checks["trilateration translation"] = (worst <= 1e-9, f"{worst:.1e}")

    worst = 0.0
    for _ in range(100):
        r = rng.normal(-40, 3, (3, 360))
        shift = rng.uniform(-50, 50, (3, 1))
        worst = max(worst, float(np.max(np.abs(deviation_matrix(BeamSweep(r)) - deviation_matrix(BeamSweep(r + shift))))))
    checks["deviation row-shift"] = (worst <= 1e-12, f"{worst:.1e}")

    sc = ScenarioConfig()
    taus = np.linspace(0.5, 12, 24)
    monotone = True
    for k in range(200):
        sweep = (generate_intrusion_sweep if k % 2 else generate_baseline_sweep)(sc, rng)
        flags = [fine_detect(sweep, DetectionConfig(tau=t)).detected for t in taus]
        monotone &= flags == sorted(flags, reverse=True)
    checks["fine_detect monotone in tau"] = (monotone, "200 sweeps")

    accs = []
    for sf in (0.0, 1.0, 2.0, 4.0):
        e = ExperimentConfig(scenario=ScenarioConfig(radio=RadioConfig(sigma_fading=sf)), trials=500, seed=77)
        accs.append(run_experiment(e)[0].accuracy)
    checks["accuracy nonincreasing in sigma_f"] = (all(a >= b for a, b in zip(accs, accs[1:])),
                                                   " ".join(f"{a:.3f}" for a in accs))
    elapsed = time.perf_counter() - t0
    ok = all(v[0] for v in checks.values()) and elapsed < 30.0
    detail = "; ".join(f"{k}: {'ok' if v[0] else 'FAIL'} ({v[1]})" for k, v in checks.items())
    record("C5 property suites", ok, f"{detail}; {elapsed:.1f} s (<30 s)")


def test_c6_determinism(tmp_path):
    for d in ("a", "b"):
        m, recs = run_experiment(calibrated_experiment(trials=100, seed=123))
        export_results(m, recs, tmp_path / d)
    same = all((tmp_path / "a" / f).read_bytes() == (tmp_path / "b" / f).read_bytes()
               for f in ("metrics.json", "curves.csv"))
    record("C6 determinism", same, "metrics.json and curves.csv byte-identical across two runs")


def test_c7_rmse_substitute():
    mq, _ = run_experiment(quiet_experiment(trials=100, seed=0))
    quiet_zero = all(v == 0.0 for v in mq.cumulative_curves["running_rmse_m"])
    cfg = calibrated_experiment(trials=100, seed=0)
    m, _ = run_experiment(cfg)
    bound = math.radians(cfg.angle_tolerance) * cfg.scenario.intruder_distance
    record("C7 angle RMSE (Fig. 7 substitute)", quiet_zero and m.angle_rmse_m < bound,
           f"noiseless running RMSE all zero={quiet_zero}; calibrated RMSE={m.angle_rmse_m:.4f} m "
           f"< {bound:.4f} m arc of {cfg.angle_tolerance} deg")
