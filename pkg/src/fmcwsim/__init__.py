"""FMCW automotive radar mutual-interference simulator and failure models.

The package splits into scenario construction (`scenario`), line-of-sight
and link-budget geometry (`geometry`), potential-interferer enumeration
(`interferers`), closed-form failure-rate models for the mitigation
schemes (`models`), Monte Carlo cross-checks (`oracle`), bundled reference
parameter sets (`presets`), and a config-driven command line (`cli`).
"""

from .accel import NUMBA_ENABLED, active_backend
from .geometry import (BOLTZMANN, REFERENCE_TEMPERATURE_K, SPEED_OF_LIGHT,
                       DerivedRadarMetrics, LinkBudgetSpec,
                       derived_radar_metrics, equivalent_distance, in_fov,
                       max_equivalent_distance, reflection_points,
                       segment_blocked)
from .interferers import (CompassConfig, CompassMode, CornerPairing,
                          CountSplit, InterfererDistribution, PathKind,
                          PotentialInterferer, average_count_curve,
                          compass_channel, distance_count_curves,
                          find_potential_interferers, interferer_distribution)
from .models import (FailureResult, RadarTimingSpec, Scheme,
                     chirp_collision_prob, effective_interferer_distribution,
                     failure_prob_baseline, failure_prob_chirp_hopping,
                     failure_prob_frame_hopping, failure_prob_with_compass,
                     frame_loss_prob_single, frame_repetition_time,
                     freq_overlap_prob, time_between_failures)
from .oracle import (CheckRow, McEstimate, chirp_pair_collides,
                     enumerate_frame_loss, mc_frame_loss, mc_freq_overlap,
                     mc_system_failure, run_validation)
from .presets import (CORNER_BUDGET, CORNER_COMPASS, CORNER_TIMING,
                      FRONT_BUDGET, FRONT_COMPASS, FRONT_TIMING, USE_WEEK_S,
                      USE_YEAR_S, SystemPreset, get_preset)
from .scenario import (HighwayConfig, RadarInstance, RadarKind, RadarLayout,
                       ScenarioError, Snapshot, TraceFormatError,
                       VehicleState, corner_layout, front_layout,
                       generate_highway, load_snapshots, place_radars,
                       save_snapshots)

__version__ = "0.1.0"

__all__ = [
    "BOLTZMANN", "CORNER_BUDGET", "CORNER_COMPASS", "CORNER_TIMING",
    "CheckRow", "CompassConfig", "CompassMode", "CornerPairing",
    "CountSplit", "DerivedRadarMetrics", "FRONT_BUDGET", "FRONT_COMPASS",
    "FRONT_TIMING", "FailureResult", "HighwayConfig",
    "InterfererDistribution", "LinkBudgetSpec", "McEstimate",
    "NUMBA_ENABLED", "PathKind", "PotentialInterferer", "RadarInstance",
    "RadarKind", "RadarLayout", "RadarTimingSpec",
    "REFERENCE_TEMPERATURE_K", "SPEED_OF_LIGHT", "ScenarioError", "Scheme",
    "Snapshot", "SystemPreset", "TraceFormatError", "USE_WEEK_S",
    "USE_YEAR_S", "VehicleState", "active_backend", "average_count_curve",
    "chirp_collision_prob", "chirp_pair_collides", "compass_channel",
    "corner_layout", "derived_radar_metrics", "distance_count_curves",
    "effective_interferer_distribution", "equivalent_distance",
    "failure_prob_baseline", "failure_prob_chirp_hopping",
    "failure_prob_frame_hopping", "failure_prob_with_compass",
    "find_potential_interferers", "frame_loss_prob_single",
    "frame_repetition_time", "freq_overlap_prob", "front_layout",
    "generate_highway", "get_preset", "in_fov", "interferer_distribution",
    "load_snapshots", "max_equivalent_distance", "mc_frame_loss",
    "mc_freq_overlap", "mc_system_failure", "place_radars",
    "reflection_points", "run_validation", "save_snapshots",
    "segment_blocked", "time_between_failures",
]
