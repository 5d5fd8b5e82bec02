"""Sight lines, reflection geometry, and the interference link budget.

All positions are 2-D world coordinates in meters, angles in degrees.
Interference travels one way (attacker transmitter to victim receiver), so
path loss goes with d^2 on a direct path and with d1^2 * d2^2 / rcs on a
single-reflection path; equivalent_distance collapses the latter onto the
former.
"""

import math
from dataclasses import dataclass

import numpy as np

from . import kernels

SPEED_OF_LIGHT = 299792458.0
BOLTZMANN = 1.380649e-23
REFERENCE_TEMPERATURE_K = 290.0


def in_fov(radar, point):
    """True iff the point lies inside the radar's closed field-of-view cone.

    The boundary counts as inside; a point coincident with the radar does
    not.  Implemented with a cosine comparison so the same rule runs inside
    the hot kernels.
    """
    dx = point[0] - radar.x
    dy = point[1] - radar.y
    dist = math.sqrt(dx * dx + dy * dy)
    if dist == 0.0:
        return False
    rad = math.radians(radar.boresight_deg)
    coshalf = math.cos(math.radians(radar.fov_deg / 2.0))
    return math.cos(rad) * dx + math.sin(rad) * dy >= coshalf * dist


def pack_rectangles(vehicles):
    """(V, 6) footprint pack [cx, cy, half_len, half_wid, cos, sin]."""
    out = np.empty((len(vehicles), 6))
    for i, v in enumerate(vehicles):
        rad = math.radians(v.heading_deg)
        out[i, 0] = v.x
        out[i, 1] = v.y
        out[i, 2] = 0.5 * v.length_m
        out[i, 3] = 0.5 * v.width_m
        out[i, 4] = math.cos(rad)
        out[i, 5] = math.sin(rad)
    return out


def segment_blocked(a, b, vehicles, exclude_ids=()):
    """True iff the open segment a-b crosses any non-excluded footprint.

    Touching a footprint only at a corner or sliding exactly along an edge
    does not block (the crossing must have positive length strictly inside).
    Vehicles whose id is in exclude_ids never block.
    """
    keep = [v for v in vehicles if v.id not in set(exclude_ids)]
    if not keep:
        return False
    rects = pack_rectangles(keep)
    return kernels.segment_blocked_kernel(float(a[0]), float(a[1]),
                                          float(b[0]), float(b[1]), rects)


def reflection_points(vehicle):
    """The 8 candidate reflection points: 4 corners plus 4 edge midpoints.

    Order (in the vehicle frame): front-left, front-right, rear-left,
    rear-right corners, then front, rear, left, right edge midpoints.
    """
    hl = 0.5 * vehicle.length_m
    hw = 0.5 * vehicle.width_m
    local = np.array([
        (hl, hw), (hl, -hw), (-hl, hw), (-hl, -hw),
        (hl, 0.0), (-hl, 0.0), (0.0, hw), (0.0, -hw),
    ])
    rad = math.radians(vehicle.heading_deg)
    c, s = math.cos(rad), math.sin(rad)
    out = np.empty_like(local)
    out[:, 0] = vehicle.x + local[:, 0] * c - local[:, 1] * s
    out[:, 1] = vehicle.y + local[:, 0] * s + local[:, 1] * c
    return out


def equivalent_distance(d1, d2, rcs_m2):
    """Direct-path distance with the same one-way loss as a reflected path.

    A transmitter at d1 from the reflector and receiver at d2 sees the same
    interference power as over an unobstructed path of this length.
    """
    if d1 <= 0 or d2 <= 0 or rcs_m2 <= 0:
        raise ValueError("d1, d2 and rcs_m2 must be positive")
    return math.sqrt(4.0 * math.pi * d1 * d1 * d2 * d2 / rcs_m2)


@dataclass(frozen=True)
class LinkBudgetSpec:
    """One-way interference link budget at the victim receiver."""

    eirp_dbm: float
    rx_gain_db: float
    noise_figure_db: float
    carrier_hz: float
    adc_bandwidth_hz: float
    min_inr_db: float = 0.0
    rcs_m2: float = 10.0

    def __post_init__(self):
        if self.carrier_hz <= 0 or self.adc_bandwidth_hz <= 0:
            raise ValueError("carrier_hz and adc_bandwidth_hz must be positive")
        if self.rcs_m2 <= 0:
            raise ValueError("rcs_m2 must be positive")


def max_equivalent_distance(budget):
    """Largest equivalent distance at which interference still clears the
    victim's noise floor by min_inr_db.

    Free-space one-way loss at the carrier against thermal noise kTB over
    the ADC bandwidth, raised by the noise figure.
    """
    noise_db = 10.0 * math.log10(
        BOLTZMANN * REFERENCE_TEMPERATURE_K * budget.adc_bandwidth_hz)
    exponent = (budget.eirp_dbm - 30.0 + budget.rx_gain_db - noise_db
                - budget.noise_figure_db - budget.min_inr_db) / 20.0
    return SPEED_OF_LIGHT / (4.0 * math.pi * budget.carrier_hz) * 10.0 ** exponent


@dataclass(frozen=True)
class DerivedRadarMetrics:
    max_range_m: float
    range_resolution_m: float
    max_velocity_m_s: float
    velocity_resolution_m_s: float
    max_beat_delay_s: float
    frame_duration_s: float


def derived_radar_metrics(timing, carrier_hz):
    """Range/velocity coverage and resolution implied by a chirp timing.

    max range comes from the largest beat frequency the ADC tracks, range
    resolution from the chirp bandwidth, velocity figures from the chirp
    repetition interval and total frame duration at the given carrier.
    """
    c = SPEED_OF_LIGHT
    frame = timing.t_rep_chirp_s * timing.n_chirps
    return DerivedRadarMetrics(
        max_range_m=(c / 4.0) * (2.0 * timing.f_beat_max_hz
                                 * timing.t_chirp_s / timing.b_chirp_hz),
        range_resolution_m=c / (2.0 * timing.b_chirp_hz),
        max_velocity_m_s=c / (4.0 * carrier_hz * timing.t_rep_chirp_s),
        velocity_resolution_m_s=c / (2.0 * carrier_hz * frame),
        max_beat_delay_s=timing.t_chirp_s * timing.f_beat_max_hz / timing.b_chirp_hz,
        frame_duration_s=frame,
    )
