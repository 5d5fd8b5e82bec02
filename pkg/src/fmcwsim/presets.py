"""Reference radar system parameter sets.

Two complete systems are bundled: a long-range forward radar (one mount per
vehicle, narrow field of view, fine velocity resolution) and a short-range
corner radar (four mounts per vehicle, wide field of view, fine range
resolution).  Each bundle carries the chirp timing, the interference link
budget, the mounting layout, and the natural compass partition for that
mount style.
"""

from dataclasses import dataclass, replace

from .geometry import LinkBudgetSpec
from .interferers import CompassConfig, CompassMode, CornerPairing
from .models import RadarTimingSpec
from .scenario import HighwayConfig, RadarLayout, corner_layout, front_layout

# average driving exposure used to convert failure rates into
# events per week / per year of road time
USE_WEEK_S = 30_120.0
USE_YEAR_S = 52.0 * USE_WEEK_S

CARRIER_HZ = 140e9

FRONT_TIMING = RadarTimingSpec(
    b_total_hz=3e9,
    b_chirp_hz=150e6,
    b_adc_hz=100e6,
    f_beat_max_hz=68.1e6,
    t_chirp_s=5.14e-6,
    t_rep_chirp_s=6.42e-6,
    n_chirps=2000,
    duty_cycle=0.5,
    x_f=0.5,
    k_ch=100,
    m_consecutive=3,
)

CORNER_TIMING = RadarTimingSpec(
    b_total_hz=3e9,
    b_chirp_hz=1.5e9,
    b_adc_hz=100e6,
    f_beat_max_hz=97.29e6,
    t_chirp_s=10.3e-6,
    t_rep_chirp_s=12.8e-6,
    n_chirps=1555,
    duty_cycle=0.25,
    x_f=0.5,
    k_ch=78,
    m_consecutive=3,
)

FRONT_BUDGET = LinkBudgetSpec(
    eirp_dbm=35.0,
    rx_gain_db=30.0,
    noise_figure_db=15.0,
    carrier_hz=CARRIER_HZ,
    adc_bandwidth_hz=100e6,
    min_inr_db=0.0,
    rcs_m2=10.0,
)

CORNER_BUDGET = LinkBudgetSpec(
    eirp_dbm=15.0,
    rx_gain_db=23.0,
    noise_figure_db=15.0,
    carrier_hz=CARRIER_HZ,
    adc_bandwidth_hz=100e6,
    min_inr_db=0.0,
    rcs_m2=10.0,
)

# front radars split the band by absolute bearing: with two sectors and a
# 90 degree offset, eastbound and westbound traffic land in different halves
FRONT_COMPASS = CompassConfig(n_sectors=2, sector_offset_deg=90.0,
                              mode=CompassMode.OFF)

# corner radars pair by look direction relative to travel: the two
# front corners against the two rear corners
CORNER_COMPASS = CompassConfig(n_sectors=2, sector_offset_deg=0.0,
                               mode=CompassMode.OFF,
                               corner_pairing=CornerPairing.FRONT_VS_BACK)

DEFAULT_HIGHWAY = HighwayConfig()


@dataclass(frozen=True)
class SystemPreset:
    name: str
    timing: RadarTimingSpec
    budget: LinkBudgetSpec
    layout: RadarLayout
    compass: CompassConfig


def get_preset(name):
    """Look up a bundled system by name ("front" or "corner")."""
    if name == "front":
        return SystemPreset(name="front", timing=FRONT_TIMING,
                            budget=FRONT_BUDGET, layout=front_layout(),
                            compass=FRONT_COMPASS)
    if name == "corner":
        return SystemPreset(name="corner", timing=CORNER_TIMING,
                            budget=CORNER_BUDGET, layout=corner_layout(),
                            compass=CORNER_COMPASS)
    raise ValueError("unknown preset %r (expected 'front' or 'corner')" % (name,))


def with_compass_mode(preset, mode):
    """Copy of the preset with its compass switched to the given mode."""
    return replace(preset, compass=replace(preset.compass, mode=mode))
