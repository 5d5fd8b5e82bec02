"""Potential-interferer enumeration over traffic snapshots.

An attacker radar is a potential interferer of a victim when its signal can
reach the victim receiver above the noise floor, either over a direct
mutual line of sight or via a single reflection off a third vehicle (the
strongest reflection point is kept).  Counting attackers per victim over
many snapshots produces the interferer-count distribution that feeds the
failure models, optionally filtered by compass sectoring where only radars
sharing a heading-derived channel can interfere.
"""

import enum
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import geometry, kernels
from .scenario import RadarKind, place_radars


class CompassMode(enum.Enum):
    OFF = "off"
    EFFECTIVE = "effective"
    WORST_CASE_SAME_SECTOR = "worst_case_same_sector"


class CornerPairing(enum.Enum):
    FRONT_VS_BACK = "front_vs_back"


class PathKind(enum.Enum):
    DIRECT = "direct"
    REFLECTED = "reflected"


class CountSplit(enum.Enum):
    ALL = "all"
    DIRECT_ONLY = "direct_only"


@dataclass(frozen=True)
class CompassConfig:
    """Heading-derived channelization of the shared band."""

    n_sectors: int = 2
    sector_offset_deg: float = 0.0
    mode: CompassMode = CompassMode.OFF
    corner_pairing: CornerPairing = None

    def __post_init__(self):
        if self.n_sectors < 1:
            raise ValueError("n_sectors must be >= 1")
        if self.corner_pairing is not None and self.n_sectors != 2:
            raise ValueError("corner pairing needs exactly 2 sectors")


def compass_channel(boresight_deg, config, heading_deg=None):
    """Channel index of a radar pointing at boresight_deg.

    Sectors are half-open wedges of 360/n_sectors degrees starting at
    sector_offset_deg.  With corner pairing the two front-corner radars of
    a vehicle share channel 0 and the rear pair channel 1, which needs the
    vehicle heading.
    """
    if config.corner_pairing is CornerPairing.FRONT_VS_BACK and heading_deg is not None:
        rel = (boresight_deg - heading_deg) % 360.0
        return 0 if (rel < 90.0 or rel >= 270.0) else 1
    width = 360.0 / config.n_sectors
    ch = int(((boresight_deg - config.sector_offset_deg) % 360.0) // width)
    return min(ch, config.n_sectors - 1)


@dataclass(frozen=True)
class PotentialInterferer:
    attacker: object
    attacker_index: int
    kind: PathKind
    equivalent_distance_m: float
    d1_m: float
    d2_m: float
    reflector_vehicle_id: int = None
    reflection_point_index: int = None


@dataclass(frozen=True)
class InterfererDistribution:
    """Empirical PMF of potential-interferer counts per victim radar."""

    probabilities: np.ndarray
    max_equivalent_distance_m: float
    sample_count: int

    def mean(self):
        return float(np.dot(np.arange(self.probabilities.size), self.probabilities))


class _ScenePack:
    """Snapshot geometry flattened into kernel-ready arrays."""

    def __init__(self, snapshot, layout, compass=None):
        vehicles = snapshot.vehicles
        radars = []
        rveh = []
        rchan = []
        for vi, veh in enumerate(vehicles):
            for radar in place_radars(veh, layout):
                radars.append(radar)
                rveh.append(vi)
                if compass is not None:
                    rchan.append(compass_channel(radar.boresight_deg, compass,
                                                 veh.heading_deg))
                else:
                    rchan.append(0)
        n = len(radars)
        self.radars = radars
        self.rpos = np.array([[r.x, r.y] for r in radars]) if n else np.empty((0, 2))
        rad = np.radians([r.boresight_deg for r in radars])
        self.rdir = np.column_stack((np.cos(rad), np.sin(rad))) if n else np.empty((0, 2))
        self.rcoshalf = np.cos(np.radians([r.fov_deg / 2.0 for r in radars]))
        self.rveh = np.array(rveh, dtype=np.int64)
        self.rchan = np.array(rchan, dtype=np.int64)
        self.rects = geometry.pack_rectangles(vehicles)
        self.rpts = (np.stack([geometry.reflection_points(v) for v in vehicles])
                     if vehicles else np.empty((0, 8, 2)))
        self.vdiag = np.sqrt(self.rects[:, 2] ** 2 + self.rects[:, 3] ** 2)
        self.vehicles = vehicles

    def find_paths(self, victim_index, d_max, rcs_m2, same_channel_only, backend=None):
        coef = 4.0 * math.pi / rcs_m2
        bound2 = (d_max * d_max) / coef
        return kernels.find_paths_kernel(
            victim_index, self.rpos, self.rdir, self.rcoshalf, self.rveh,
            self.rchan, same_channel_only, self.rects, self.rpts, self.vdiag,
            d_max, coef, bound2, backend=backend)


def _same_channel_only(compass):
    return compass is not None and compass.mode is CompassMode.EFFECTIVE


def _locate_victim(pack, victim):
    for i, radar in enumerate(pack.radars):
        if (radar.vehicle_id == victim.vehicle_id
                and abs(radar.x - victim.x) < 1e-9
                and abs(radar.y - victim.y) < 1e-9
                and abs((radar.boresight_deg - victim.boresight_deg) % 360.0) < 1e-9):
            return i
    raise ValueError("victim radar does not match any placed radar in the snapshot")


def find_potential_interferers(victim, snapshot, layout, d_max, rcs_m2=10.0,
                               compass=None):
    """All potential interferers of one victim radar in one snapshot.

    Direct paths need mutual field of view and a clear sight line between
    attacker and victim (their own two vehicles never block).  Failing
    that, the reflected path minimizing d1*d2 over all reflection points of
    third vehicles is used, with the reflection point inside both radars'
    fields of view and both legs unblocked (a leg grazing the reflector's
    outline at the reflection point itself does not count as blocked, but a
    leg crossing the reflector's body does).  Entries with equivalent
    distance above d_max are
    dropped; with compass mode "effective", attackers on another channel
    are dropped too.
    """
    pack = _ScenePack(snapshot, layout, compass)
    vi = _locate_victim(pack, victim)
    kind, dref, d1, d2, rvehs, rpt = pack.find_paths(
        vi, d_max, rcs_m2, _same_channel_only(compass))
    out = []
    for j in np.flatnonzero(kind != kernels.PATH_NONE):
        j = int(j)
        direct = kind[j] == kernels.PATH_DIRECT
        out.append(PotentialInterferer(
            attacker=pack.radars[j],
            attacker_index=j,
            kind=PathKind.DIRECT if direct else PathKind.REFLECTED,
            equivalent_distance_m=float(dref[j]),
            d1_m=float(d1[j]),
            d2_m=float(d2[j]) if not direct else 0.0,
            reflector_vehicle_id=(pack.vehicles[rvehs[j]].id if not direct else None),
            reflection_point_index=(int(rpt[j]) if not direct else None),
        ))
    return out


def _per_victim_counts(pack, d_max, rcs_m2, same_channel_only, threads=1):
    """(n_radars, 2) array of [all, direct] interferer counts per victim."""
    n = len(pack.radars)
    counts = np.zeros((n, 2), dtype=np.int64)

    def run(vi):
        kind = pack.find_paths(vi, d_max, rcs_m2, same_channel_only)[0]
        counts[vi, 0] = np.count_nonzero(kind != kernels.PATH_NONE)
        counts[vi, 1] = np.count_nonzero(kind == kernels.PATH_DIRECT)

    if threads > 1 and n > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            list(pool.map(run, range(n)))
    else:
        for vi in range(n):
            run(vi)
    return counts


def interferer_distribution(snapshots, layout, d_max, rcs_m2=10.0, compass=None,
                            threads=1):
    """Empirical interferer-count PMF over every (radar, snapshot) pair."""
    hist = {}
    samples = 0
    for snap in snapshots:
        pack = _ScenePack(snap, layout, compass)
        counts = _per_victim_counts(pack, d_max, rcs_m2,
                                    _same_channel_only(compass), threads)
        for c in counts[:, 0]:
            hist[int(c)] = hist.get(int(c), 0) + 1
        samples += len(pack.radars)
    if samples == 0:
        raise ValueError("no radars in the given snapshots")
    top = max(hist)
    probs = np.zeros(top + 1)
    for c, k in hist.items():
        probs[c] = k / samples
    return InterfererDistribution(probabilities=probs,
                                  max_equivalent_distance_m=float(d_max),
                                  sample_count=samples)


def distance_count_curves(snapshots, layout, d_grid, rcs_m2=10.0, compass=None,
                          threads=1):
    """Mean interferer count vs maximum equivalent distance, in one pass.

    Returns (mean_all, mean_direct) arrays over the sorted pass of d_grid
    as given; the enumeration runs once at max(d_grid) and each victim's
    equivalent distances are thresholded against every grid point.
    """
    d_grid = np.asarray(d_grid, dtype=float)
    if d_grid.size == 0 or np.any(d_grid <= 0):
        raise ValueError("d_grid must hold positive distances")
    d_top = float(d_grid.max())
    sum_all = np.zeros(d_grid.size)
    sum_direct = np.zeros(d_grid.size)
    samples = 0
    same_channel = _same_channel_only(compass)
    for snap in snapshots:
        pack = _ScenePack(snap, layout, compass)
        n = len(pack.radars)

        def run(vi):
            kind, dref = pack.find_paths(vi, d_top, rcs_m2, same_channel)[:2]
            hit = kind != kernels.PATH_NONE
            d_all = np.sort(dref[hit])
            d_dir = np.sort(dref[kind == kernels.PATH_DIRECT])
            return (np.searchsorted(d_all, d_grid, side="right"),
                    np.searchsorted(d_dir, d_grid, side="right"))

        if threads > 1 and n > 1:
            with ThreadPoolExecutor(max_workers=threads) as pool:
                results = list(pool.map(run, range(n)))
        else:
            results = [run(vi) for vi in range(n)]
        for alln, dirn in results:
            sum_all += alln
            sum_direct += dirn
        samples += n
    if samples == 0:
        raise ValueError("no radars in the given snapshots")
    return sum_all / samples, sum_direct / samples


def average_count_curve(snapshots, layout, d_grid, rcs_m2=10.0,
                        split=CountSplit.ALL, compass=None, threads=1):
    """Mean potential-interferer count per victim at each grid distance."""
    mean_all, mean_direct = distance_count_curves(snapshots, layout, d_grid,
                                                  rcs_m2, compass, threads)
    return mean_all if split is CountSplit.ALL else mean_direct
