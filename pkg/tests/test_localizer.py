import math
from dataclasses import replace

import numpy as np
import pytest

from isac_intrusion.channel import Position2D, RadioConfig
from isac_intrusion.detector import deviation_matrix
from isac_intrusion.errors import EmptyInput, InvalidDrop, InvalidRange, NoCellAboveThreshold
from isac_intrusion.localizer import (
    circular_mean_deg,
    estimate_angle,
    estimate_position,
    estimate_range,
    observed_drop,
    rmse_meters,
    supra_threshold,
)
from isac_intrusion.scenario import ScenarioConfig, generate_intrusion_sweep


def row_with(cells, a=360, value=8.0):
    dev = np.zeros((1, a))
    dev[0, list(cells)] = value
    return dev


def test_angle_window_center():
    assert estimate_angle(row_with(range(110, 131)), 5.0) == 120.0


def test_angle_wraps_around_zero():
    cells = list(range(350, 360)) + list(range(0, 11))
    assert estimate_angle(row_with(cells), 5.0) == 0.0


def test_angle_singleton():
    assert estimate_angle(row_with([47]), 5.0) == 47.0


def test_angle_requires_supra_cell():
    with pytest.raises(NoCellAboveThreshold):
        estimate_angle(row_with([47], value=4.0), 5.0)


def test_angle_uses_requested_row():
    dev = np.zeros((3, 360))
    dev[0, 10] = 9.0
    dev[2, 200:211] = 7.0
    assert estimate_angle(dev, 5.0) == 10.0
    assert estimate_angle(dev, 5.0, ap=2) == 205.0


def test_circular_mean_range_and_empty():
    assert 0 <= circular_mean_deg([359.9, 359.95]) < 360
    with pytest.raises(EmptyInput):
        circular_mean_deg([])


def test_angle_rotational_equivariance(quiet_radio):
    # literal gate with a wide threshold obstructs every AP, so any bearing is observable
    base = ScenarioConfig(radio=quiet_radio, gate_mode="literal", distance_threshold=6.0, intruder_angle=120.0)

    def est(cfg):
        return estimate_angle(deviation_matrix(generate_intrusion_sweep(cfg, np.random.default_rng(0))), 5.0)

    ref = est(base)
    for delta in (1, 37, 90, 239, 245, 300):
        cfg = replace(base, intruder_angle=(120.0 + delta) % 360)
        assert est(cfg) == pytest.approx((ref + delta) % 360, abs=1e-9)


def test_range_anchor_point():
    sc = ScenarioConfig()
    assert estimate_range(sc.delta_rss, sc.radio, sc) == pytest.approx(sc.reference_obstruction_distance)
    assert sc.reference_obstruction_distance == 2.0


def test_range_halving_step():
    sc = ScenarioConfig()
    drop = sc.delta_rss + 10 * sc.radio.path_loss_exponent * math.log10(2)
    assert estimate_range(drop, sc.radio, sc) == pytest.approx(1.0, rel=1e-12)


def test_range_clamps():
    sc = ScenarioConfig()
    assert estimate_range(0.05, sc.radio, sc) == sc.distance_threshold
    assert estimate_range(80.0, sc.radio, sc) == 0.1


@pytest.mark.parametrize("drop", [0.0, -3.0])
def test_range_rejects_nonpositive_drop(drop):
    sc = ScenarioConfig()
    with pytest.raises(InvalidDrop):
        estimate_range(drop, sc.radio, sc)


def test_range_monotone_decreasing():
    sc = ScenarioConfig()
    drops = np.linspace(0.5, 40, 100)
    r = [estimate_range(d, sc.radio, sc) for d in drops]
    assert np.all(np.diff(r) <= 0)


@pytest.mark.parametrize("anchor, theta, rng, expected", [
    ((0, 0), 0.0, 2.0, (2.0, 0.0)),
    ((5, 5), 120.0, 2.0, (4.0, 5 + math.sqrt(3))),
    ((1, 1), 270.0, 3.0, (1.0, -2.0)),
])
def test_position(anchor, theta, rng, expected):
    p = estimate_position(Position2D(*anchor), theta, rng)
    assert p.x == pytest.approx(expected[0], abs=1e-12)
    assert p.y == pytest.approx(expected[1], abs=1e-12)


def test_position_at_exact_range(rng):
    for _ in range(100):
        a = Position2D(*rng.uniform(-10, 10, 2))
        theta, r = rng.uniform(0, 360), rng.uniform(0.1, 10)
        p = estimate_position(a, theta, r)
        assert abs(math.dist((p.x, p.y), (a.x, a.y)) - r) < 1e-9


def test_position_rejects_bad_range():
    with pytest.raises(InvalidRange):
        estimate_position(Position2D(0, 0), 0.0, 0.0)


def test_rmse_exact():
    assert rmse_meters([(120.0, 120.0), (10.0, 10.0)], 2.0) == 0.0


def test_rmse_one_degree_at_two_meters():
    assert rmse_meters([(120.0, 121.0)], 2.0) == pytest.approx(2 * math.pi / 180, rel=1e-12)
    assert rmse_meters([(120.0, 121.0)], 2.0) == pytest.approx(0.0349, abs=1e-4)


def test_rmse_circular_difference():
    assert rmse_meters([(359.0, 1.0)], 1.0) == pytest.approx(math.radians(2.0), rel=1e-12)


def test_rmse_per_pair_ranges():
    got = rmse_meters([(0.0, 1.0), (0.0, 2.0)], [1.0, 3.0])
    expected = math.sqrt((math.radians(1) ** 2 + (3 * math.radians(2)) ** 2) / 2)
    assert got == pytest.approx(expected, rel=1e-12)


def test_rmse_empty():
    with pytest.raises(EmptyInput):
        rmse_meters([], 2.0)


def test_observed_drop_quiet(quiet_scenario):
    sweep = generate_intrusion_sweep(quiet_scenario, np.random.default_rng(0))
    ap, mask = supra_threshold(deviation_matrix(sweep), 5.0)
    assert ap == 1 and mask.sum() == 21
    assert observed_drop(sweep.rss[ap], mask) == pytest.approx(10.0, abs=1e-12)
    with pytest.raises(InvalidDrop):
        observed_drop(sweep.rss[ap], np.ones(360, bool))
