"""Potential-interferer enumeration, compass channels, and count statistics."""

import dataclasses
import math

import numpy as np
import pytest

from fmcwsim import (
    FRONT_COMPASS,
    CompassConfig,
    CompassMode,
    CornerPairing,
    CountSplit,
    HighwayConfig,
    PathKind,
    RadarInstance,
    RadarKind,
    Snapshot,
    VehicleState,
    average_count_curve,
    compass_channel,
    corner_layout,
    distance_count_curves,
    find_potential_interferers,
    front_layout,
    generate_highway,
    interferer_distribution,
    place_radars,
)


def veh(i, x, y, h):
    return VehicleState(id=i, x=x, y=y, heading_deg=h, length_m=4.5, width_m=1.8)


def face_to_face(gap=50.0):
    return Snapshot(0.0, [veh(0, -2.25, 0.0, 0.0), veh(1, gap + 2.25, 0.0, 180.0)])


# ---------------------------------------------------------------- enumeration

def test_single_vehicle_sees_nothing():
    snap = Snapshot(0.0, [veh(0, 0.0, 0.0, 0.0)])
    dist = interferer_distribution([snap], front_layout(), d_max=1000.0)
    assert dist.probabilities.tolist() == [1.0]
    assert dist.mean() == 0.0
    assert dist.sample_count == 1


def test_face_to_face_direct():
    snap = face_to_face(50.0)
    layout = front_layout()
    victim = place_radars(snap.vehicles[1], layout)[0]
    (p,) = find_potential_interferers(victim, snap, layout, d_max=1000.0)
    assert p.kind is PathKind.DIRECT
    assert p.attacker_index == 0
    assert p.equivalent_distance_m == pytest.approx(50.0, rel=1e-12)
    assert p.d1_m == pytest.approx(50.0, rel=1e-12)
    assert p.d2_m == 0.0
    assert p.reflector_vehicle_id is None
    assert p.reflection_point_index is None
    dist = interferer_distribution([snap], layout, d_max=1000.0)
    assert dist.probabilities.tolist() == [0.0, 1.0]


def test_reflected_path_fields():
    # single-reflection detour with leg lengths exactly 30 m and 20 m
    snap = Snapshot(0.0, [veh(0, 2.25, 32.25, 270.0),
                          veh(1, 0.0, 0.0, 180.0),
                          veh(2, 24.5, 0.0, 180.0)])
    layout = front_layout(fov_deg=1.0)
    victim = place_radars(snap.vehicles[2], layout)[0]
    (p,) = find_potential_interferers(victim, snap, layout, d_max=1000.0)
    assert p.kind is PathKind.REFLECTED
    assert p.attacker_index == 0
    assert p.d1_m == pytest.approx(30.0, rel=1e-12)
    assert p.d2_m == pytest.approx(20.0, rel=1e-12)
    assert p.equivalent_distance_m == pytest.approx(672.5989459677514, rel=1e-12)
    assert p.reflector_vehicle_id == 1
    assert p.reflection_point_index == 5


def test_out_of_range_direct_not_replaced():
    snap = Snapshot(0.0, [veh(0, -2.25, 0.0, 0.0),
                          veh(1, 199.6, 0.97, 0.0),
                          veh(2, 202.25, 0.0, 180.0)])
    layout = front_layout()
    victim = place_radars(snap.vehicles[2], layout)[0]
    # the direct line of sight exists but measures 200 m; the reflected
    # detour would fit the 100 m budget yet must not be used
    assert find_potential_interferers(victim, snap, layout, d_max=100.0) == []
    # rotating the victim away breaks the mutual field of view, and the
    # same reflected detour becomes the path
    cx = 200.0 - 2.25 * math.cos(math.radians(160.0))
    cy = -2.25 * math.sin(math.radians(160.0))
    snap2 = Snapshot(0.0, [snap.vehicles[0], snap.vehicles[1], veh(2, cx, cy, 160.0)])
    victim2 = place_radars(snap2.vehicles[2], layout)[0]
    (p,) = find_potential_interferers(victim2, snap2, layout, d_max=100.0)
    assert p.kind is PathKind.REFLECTED
    assert p.reflection_point_index == 7
    assert p.equivalent_distance_m == pytest.approx(90.86064668210409, rel=1e-10)


def test_blocked_direct_falls_back_to_reflection():
    snap = Snapshot(0.0, [veh(0, -2.25, 0.0, 0.0),
                          veh(1, 20.0, 0.0, 0.0),
                          veh(2, 20.0, 4.0, 0.0),
                          veh(3, 42.25, 0.0, 180.0)])
    layout = front_layout()
    victim = place_radars(snap.vehicles[3], layout)[0]
    out = {p.attacker_index: p for p in
           find_potential_interferers(victim, snap, layout, d_max=1000.0)}
    assert set(out) == {0, 1, 2}
    assert out[0].kind is PathKind.REFLECTED
    assert out[0].reflector_vehicle_id == 2
    assert out[0].reflection_point_index == 1
    assert out[0].equivalent_distance_m == pytest.approx(453.7665777920669, rel=1e-12)
    assert out[1].kind is PathKind.DIRECT
    assert out[1].d1_m == pytest.approx(17.75, rel=1e-12)
    assert out[2].kind is PathKind.DIRECT


def test_victim_must_belong_to_snapshot():
    snap = face_to_face()
    ghost = RadarInstance(vehicle_id=9, x=1.0, y=1.0, boresight_deg=0.0,
                          fov_deg=30.0, kind=RadarKind.FRONT)
    with pytest.raises(ValueError, match="victim radar"):
        find_potential_interferers(ghost, snap, front_layout(), d_max=100.0)


def test_empty_snapshots_rejected():
    with pytest.raises(ValueError, match="no radars"):
        interferer_distribution([Snapshot(0.0, [])], front_layout(), d_max=100.0)


# ---------------------------------------------------------------- compass

def test_compass_channel_sectors():
    two = CompassConfig(n_sectors=2)
    assert compass_channel(10.0, two) == 0
    assert compass_channel(179.999, two) == 0
    assert compass_channel(180.0, two) == 1  # half-open sector boundary
    assert compass_channel(190.0, two) == 1
    assert compass_channel(359.999, two) == 1
    shifted = CompassConfig(n_sectors=2, sector_offset_deg=90.0)
    assert compass_channel(180.0, shifted) == 0
    assert compass_channel(0.0, shifted) == 1
    four = CompassConfig(n_sectors=4)
    assert compass_channel(100.0, four) == 1
    assert compass_channel(355.0, four) == 3


def test_compass_channel_corner_pairing():
    cfg = CompassConfig(n_sectors=2, corner_pairing=CornerPairing.FRONT_VS_BACK)
    for heading in (0.0, 90.0, 217.0):
        front = [(heading + off) % 360.0 for off in (45.0, -45.0)]
        back = [(heading + off) % 360.0 for off in (135.0, -135.0)]
        assert all(compass_channel(b, cfg, heading) == 0 for b in front)
        assert all(compass_channel(b, cfg, heading) == 1 for b in back)
    # without the vehicle heading the plain sector rule applies
    assert compass_channel(45.0, cfg) == 0
    assert compass_channel(225.0, cfg) == 1


def test_compass_config_validation():
    with pytest.raises(ValueError):
        CompassConfig(n_sectors=0)
    with pytest.raises(ValueError):
        CompassConfig(n_sectors=3, corner_pairing=CornerPairing.FRONT_VS_BACK)


def compass_scene():
    # attacker X points 240 degrees (victim's channel under the offset-90
    # two-sector split); attacker Y points 270 (the other channel); both
    # reach the victim only via the reflector at the origin
    hx = 240.0
    cx = 20.0 - 2.25 * math.cos(math.radians(hx))
    cy = 30.0 - 2.25 * math.sin(math.radians(hx))
    return Snapshot(0.0, [veh(0, 0.0, 0.0, 180.0),
                          veh(1, cx, cy, hx),
                          veh(2, 2.25, 32.25, 270.0),
                          veh(3, 24.5, 0.0, 180.0)])


def test_compass_modes_filter_attackers():
    snap = compass_scene()
    layout = front_layout()
    victim = place_radars(snap.vehicles[3], layout)[0]

    def attackers(mode):
        comp = dataclasses.replace(FRONT_COMPASS, mode=mode)
        out = find_potential_interferers(victim, snap, layout, 1000.0, compass=comp)
        assert all(p.kind is PathKind.REFLECTED for p in out)
        return sorted(p.attacker_index for p in out)

    assert attackers(CompassMode.OFF) == [1, 2]
    # only the same-channel attacker survives the effective filter
    assert attackers(CompassMode.EFFECTIVE) == [1]
    # the worst case assumes every attacker shares the victim's channel
    assert attackers(CompassMode.WORST_CASE_SAME_SECTOR) == [1, 2]


def test_effective_distribution_dominated():
    snaps = generate_highway(HighwayConfig(length_m=600.0, density_veh_km=60.0, seed=2))
    layout = front_layout()
    off = interferer_distribution(snaps, layout, d_max=500.0)
    comp = dataclasses.replace(FRONT_COMPASS, mode=CompassMode.EFFECTIVE)
    eff = interferer_distribution(snaps, layout, d_max=500.0, compass=comp)
    assert eff.mean() <= off.mean()
    assert off.mean() > 0.5  # the scenario actually produces interference


# ---------------------------------------------------------------- statistics

def test_distribution_matches_per_victim_recount():
    # the aggregate histogram must equal counting each victim separately
    # through the public single-victim API
    snaps = generate_highway(HighwayConfig(length_m=400.0, density_veh_km=50.0, seed=6))
    layout = front_layout()
    d_max = 300.0
    dist = interferer_distribution(snaps, layout, d_max=d_max)
    counts = []
    for snap in snaps:
        for v in snap.vehicles:
            for r in place_radars(v, layout):
                counts.append(len(find_potential_interferers(r, snap, layout, d_max)))
    probs = np.bincount(counts, minlength=dist.probabilities.size) / len(counts)
    assert np.allclose(dist.probabilities, probs, atol=1e-15)
    assert dist.sample_count == len(counts)
    assert dist.probabilities.sum() == pytest.approx(1.0, abs=1e-12)


def test_distribution_threads_equal():
    snaps = generate_highway(HighwayConfig(length_m=400.0, density_veh_km=50.0, seed=6))
    one = interferer_distribution(snaps, front_layout(), d_max=300.0, threads=1)
    two = interferer_distribution(snaps, front_layout(), d_max=300.0, threads=2)
    assert np.array_equal(one.probabilities, two.probabilities)
    assert one.sample_count == two.sample_count


def test_count_curves_structure():
    snaps = generate_highway(HighwayConfig(length_m=600.0, density_veh_km=50.0, seed=2))
    layout = front_layout()
    d_grid = np.array([50.0, 100.0, 200.0, 400.0, 800.0])
    mean_all, mean_direct = distance_count_curves(snaps, layout, d_grid)
    assert np.all(np.diff(mean_all) >= 0)
    assert np.all(np.diff(mean_direct) >= 0)
    assert np.all(mean_all >= mean_direct)
    assert mean_all[-1] > 0
    # the curve value at a cutoff equals a full enumeration at that cutoff
    dist = interferer_distribution(snaps, layout, d_max=200.0)
    assert mean_all[2] == pytest.approx(dist.mean(), abs=1e-12)
    # threading only changes scheduling
    again = distance_count_curves(snaps, layout, d_grid, threads=2)
    assert np.array_equal(mean_all, again[0])
    assert np.array_equal(mean_direct, again[1])


def test_average_count_curve_split():
    snaps = generate_highway(HighwayConfig(length_m=600.0, density_veh_km=50.0, seed=2))
    d_grid = np.array([100.0, 400.0])
    both = distance_count_curves(snaps, front_layout(), d_grid)
    assert np.array_equal(average_count_curve(snaps, front_layout(), d_grid), both[0])
    assert np.array_equal(
        average_count_curve(snaps, front_layout(), d_grid, split=CountSplit.DIRECT_ONLY),
        both[1])


def test_corner_layout_counts_four_radars_per_vehicle():
    snap = face_to_face(20.0)
    dist = interferer_distribution([snap], corner_layout(), d_max=500.0)
    assert dist.sample_count == 8
