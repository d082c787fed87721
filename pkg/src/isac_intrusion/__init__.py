"""RSS-based intrusion detection and localization over a simulated Wi-Fi sensing network."""

from .anchor import ApConstellation, LocalizationFix, localize_anchor, trilaterate
from .channel import (
    Position2D,
    RadioConfig,
    baseline_rss,
    draw_fading,
    draw_shadowing,
    euclidean_distance,
    path_loss_db,
    rss_to_distance,
)
from .detector import (
    DetectionConfig,
    DetectionOutcome,
    coarse_detect,
    coarse_scan,
    deviation_matrix,
    fine_detect,
    windowed_mean,
)
from .harness import ExperimentConfig, TrialMetrics, TrialRecord, export_results, run_experiment, run_trial
from .localizer import (
    IntruderEstimate,
    estimate_angle,
    estimate_position,
    estimate_range,
    rmse_meters,
)
from .ofdm import SubcarrierSymbols, TimeDomainSymbol, ofdm_demodulate, ofdm_modulate
from .scenario import (
    BeamSweep,
    ScenarioConfig,
    generate_baseline_sweep,
    generate_intrusion_sweep,
    generate_time_series,
)

__version__ = "0.1.0"
