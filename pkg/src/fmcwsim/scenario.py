"""Highway traffic snapshots and radar placement.

A scenario is a list of time-stamped snapshots, each holding rectangular
vehicle footprints on a straight multi-lane highway.  Vehicles in one
direction head 0 degrees (+x), the opposite direction 180 degrees.  Radars
are mounted per vehicle from a layout: a single front-center radar or four
corner radars.
"""

import csv
import enum
import math
from dataclasses import dataclass, field

import numpy as np


class ScenarioError(ValueError):
    """Invalid scenario configuration or trace content."""


class TraceFormatError(ScenarioError):
    """Malformed scenario CSV; message carries the offending line number."""


@dataclass
class VehicleState:
    id: int
    x: float
    y: float
    heading_deg: float
    length_m: float
    width_m: float


@dataclass
class Snapshot:
    time_s: float
    vehicles: list


class RadarKind(enum.Enum):
    FRONT = "front"
    CORNER = "corner"


@dataclass(frozen=True)
class RadarInstance:
    vehicle_id: int
    x: float
    y: float
    boresight_deg: float
    fov_deg: float
    kind: RadarKind


@dataclass(frozen=True)
class RadarLayout:
    """Mount points (as fractions of vehicle length/width) plus boresights.

    Front: one radar at the front bumper center looking along the heading.
    Corner: four radars on the footprint corners, boresights at heading
    +/-45 (front pair) and +/-135 (rear pair) so the 60 degree sectors of
    one vehicle never overlap.
    """

    kind: RadarKind
    fov_deg: float
    mount_fractions: tuple
    boresight_offsets_deg: tuple

    def __post_init__(self):
        if len(self.mount_fractions) != len(self.boresight_offsets_deg):
            raise ScenarioError("mount points and boresight offsets must pair up")
        if self.kind is RadarKind.FRONT and len(self.mount_fractions) != 1:
            raise ScenarioError("front layout carries exactly one radar")
        if self.kind is RadarKind.CORNER:
            if len(self.mount_fractions) != 4:
                raise ScenarioError("corner layout carries exactly four radars")
            offs = self.boresight_offsets_deg
            for i in range(4):
                for j in range(i + 1, 4):
                    gap = abs((offs[i] - offs[j] + 180.0) % 360.0 - 180.0)
                    if gap < self.fov_deg:
                        raise ScenarioError("corner sectors overlap on one vehicle")


def front_layout(fov_deg=30.0):
    return RadarLayout(RadarKind.FRONT, fov_deg, ((0.5, 0.0),), (0.0,))


def corner_layout(fov_deg=60.0):
    # front-left, front-right, rear-left, rear-right
    return RadarLayout(
        RadarKind.CORNER,
        fov_deg,
        ((0.5, 0.5), (0.5, -0.5), (-0.5, 0.5), (-0.5, -0.5)),
        (45.0, -45.0, 135.0, -135.0),
    )


def place_radars(vehicle, layout):
    """Radar instances for one vehicle, in the layout's mount order."""
    rad = math.radians(vehicle.heading_deg)
    c, s = math.cos(rad), math.sin(rad)
    out = []
    for (fx, fy), off in zip(layout.mount_fractions, layout.boresight_offsets_deg):
        dx = fx * vehicle.length_m
        dy = fy * vehicle.width_m
        out.append(RadarInstance(
            vehicle_id=vehicle.id,
            x=vehicle.x + dx * c - dy * s,
            y=vehicle.y + dx * s + dy * c,
            boresight_deg=(vehicle.heading_deg + off) % 360.0,
            fov_deg=layout.fov_deg,
            kind=layout.kind,
        ))
    return out


@dataclass(frozen=True)
class HighwayConfig:
    lanes_per_direction: int = 3
    lane_width_m: float = 3.5
    length_m: float = 8000.0
    density_veh_km: float = 150.0  # total over all lanes
    min_headway_m: float = 6.0  # center-to-center within a lane
    vehicle_length_m: float = 4.5
    vehicle_width_m: float = 1.8
    n_snapshots: int = 1
    time_step_s: float = 1.0
    seed: int = 0

    def __post_init__(self):
        if self.lanes_per_direction < 1:
            raise ScenarioError("need at least one lane per direction")
        if self.min_headway_m < self.vehicle_length_m:
            raise ScenarioError("min_headway_m below vehicle_length_m would overlap vehicles")
        if self.length_m <= 0 or self.lane_width_m <= 0:
            raise ScenarioError("length_m and lane_width_m must be positive")
        if self.density_veh_km < 0 or self.n_snapshots < 1:
            raise ScenarioError("density_veh_km must be >= 0 and n_snapshots >= 1")


def _lane_positions(rng, n, length, min_headway):
    # Uniform placement conditioned on every center-to-center gap being at
    # least min_headway, sampled constructively: draw in the shrunken
    # interval, sort, then re-inflate the mandatory gaps.
    if n == 0:
        return np.empty(0)
    free = length - (n - 1) * min_headway
    if free < 0:
        raise ScenarioError(
            "lane cannot hold %d vehicles at min headway %.1f m over %.0f m"
            % (n, min_headway, length))
    pts = np.sort(rng.uniform(0.0, free, n))
    return pts + min_headway * np.arange(n)


def generate_highway(config):
    """Synthetic snapshots: uniform lane placement with a minimum headway.

    The total vehicle count is density * length rounded to nearest, split as
    evenly as possible over all lanes of both directions (leftover vehicles
    go to the first lanes).  Direction 0 heads +x in lanes at y < 0,
    direction 1 heads -x at y > 0.
    """
    n_total = int(round(config.density_veh_km * config.length_m / 1000.0))
    n_lanes = 2 * config.lanes_per_direction
    base, extra = divmod(n_total, n_lanes)
    lane_counts = [base + (1 if i < extra else 0) for i in range(n_lanes)]
    rng = np.random.default_rng(config.seed)
    snapshots = []
    for snap_i in range(config.n_snapshots):
        vehicles = []
        vid = 0
        lane_i = 0
        for direction in range(2):
            heading = 0.0 if direction == 0 else 180.0
            ysign = -1.0 if direction == 0 else 1.0
            for lane in range(config.lanes_per_direction):
                y = ysign * (lane + 0.5) * config.lane_width_m
                xs = _lane_positions(rng, lane_counts[lane_i], config.length_m,
                                     config.min_headway_m)
                for x in xs:
                    vehicles.append(VehicleState(
                        id=vid, x=float(x), y=y, heading_deg=heading,
                        length_m=config.vehicle_length_m,
                        width_m=config.vehicle_width_m))
                    vid += 1
                lane_i += 1
        snapshots.append(Snapshot(time_s=snap_i * config.time_step_s, vehicles=vehicles))
    return snapshots


_TRACE_COLUMNS = ["time", "id", "x", "y", "heading", "length", "width"]


def save_snapshots(snapshots, path):
    """Write snapshots as a flat CSV trace; floats keep full precision."""
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(_TRACE_COLUMNS)
        for snap in snapshots:
            for v in snap.vehicles:
                w.writerow([repr(float(snap.time_s)), v.id, repr(float(v.x)),
                            repr(float(v.y)), repr(float(v.heading_deg)),
                            repr(float(v.length_m)), repr(float(v.width_m))])


def load_snapshots(path):
    """Parse a trace CSV into snapshots ordered by time.

    Headings are normalized into [0, 360).  Raises TraceFormatError with the
    line number for malformed rows, duplicate (time, id) pairs, or
    non-positive vehicle dimensions.
    """
    groups = {}
    seen = set()
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or [h.strip() for h in header] != _TRACE_COLUMNS:
            raise TraceFormatError(
                "line 1: expected header %s" % ",".join(_TRACE_COLUMNS))
        for lineno, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != len(_TRACE_COLUMNS):
                raise TraceFormatError("line %d: expected %d fields, got %d"
                                       % (lineno, len(_TRACE_COLUMNS), len(row)))
            try:
                t = float(row[0])
                vid = int(row[1])
                x = float(row[2])
                y = float(row[3])
                heading = float(row[4]) % 360.0
                length = float(row[5])
                width = float(row[6])
            except ValueError as exc:
                raise TraceFormatError("line %d: %s" % (lineno, exc)) from exc
            if length <= 0 or width <= 0:
                raise TraceFormatError(
                    "line %d: vehicle dimensions must be positive" % lineno)
            if (t, vid) in seen:
                raise TraceFormatError(
                    "line %d: duplicate vehicle id %d at time %s" % (lineno, vid, t))
            seen.add((t, vid))
            groups.setdefault(t, []).append(VehicleState(
                id=vid, x=x, y=y, heading_deg=heading,
                length_m=length, width_m=width))
    return [Snapshot(time_s=t, vehicles=groups[t]) for t in sorted(groups)]
