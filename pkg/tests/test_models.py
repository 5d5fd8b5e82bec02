"""Closed-form model layer: hand-enumerable cases, frozen oracle values,
and structural properties (monotonicity, clamping, scheme equivalence).
"""

import dataclasses
import math

import numpy as np
import pytest
from scipy import stats

from fmcwsim import (
    CORNER_TIMING,
    FRONT_TIMING,
    RadarTimingSpec,
    Scheme,
    chirp_collision_prob,
    effective_interferer_distribution,
    failure_prob_baseline,
    failure_prob_chirp_hopping,
    failure_prob_frame_hopping,
    failure_prob_with_compass,
    frame_loss_prob_single,
    frame_repetition_time,
    freq_overlap_prob,
    time_between_failures,
)
from fmcwsim.interferers import CompassConfig
from fmcwsim.models import _binom_tail_by_overlap, _overlap_slot_counts

# reference overlap probability for the bundled front radar band,
# frozen from the closed form and confirmed by the Monte Carlo oracle
P_F_FRONT = 0.05193905817174515


def small_spec(n_chirps=4, duty=0.5, k_ch=1, m=1, **kw):
    base = dict(b_total_hz=1e9, b_chirp_hz=1e8, b_adc_hz=1e8, f_beat_max_hz=5e7,
                t_chirp_s=4e-6, t_rep_chirp_s=5e-6, n_chirps=n_chirps,
                duty_cycle=duty, x_f=0.5, k_ch=k_ch, m_consecutive=m)
    base.update(kw)
    return RadarTimingSpec(**base)


# ---------------------------------------------------------------- overlap

def test_freq_overlap_reference_value():
    assert freq_overlap_prob(3e9, 150e6, 0.5) == pytest.approx(P_F_FRONT, rel=1e-14)


def test_freq_overlap_hand_case():
    # b_total 2, b_chirp 1, x_f 0.5: margin m = 1, delta = 0.5,
    # p = delta*(2m - delta)/m^2 = 0.75
    assert freq_overlap_prob(2.0, 1.0, 0.5) == pytest.approx(0.75, rel=1e-15)


def test_freq_overlap_degenerate_band():
    assert freq_overlap_prob(1e9, 1e9, 0.5) == 1.0
    # delta = b_chirp >= m forces certain collision
    assert freq_overlap_prob(1.2e9, 1e9, 0.0) == 1.0


def test_freq_overlap_full_overlap_required():
    # x_f = 1 makes the acceptance window a single point
    assert freq_overlap_prob(3e9, 150e6, 1.0) == 0.0


def test_freq_overlap_monotone():
    b_ch = 150e6
    vals = [freq_overlap_prob(b, b_ch, 0.5) for b in np.linspace(3e8, 1e10, 25)]
    assert all(a >= b for a, b in zip(vals, vals[1:]))
    vals = [freq_overlap_prob(3e9, b_ch, x) for x in np.linspace(0.0, 1.0, 21)]
    assert all(a >= b for a, b in zip(vals, vals[1:]))


def test_freq_overlap_validation():
    with pytest.raises(ValueError):
        freq_overlap_prob(1e8, 2e8, 0.5)
    with pytest.raises(ValueError):
        freq_overlap_prob(3e9, 150e6, 1.5)


# ---------------------------------------------------------------- thinning

def test_thinning_hand_case():
    # two certain interferers thinned at 1/2: Binomial(2, 0.5)
    out = effective_interferer_distribution([0.0, 0.0, 1.0], 0.5)
    assert np.allclose(out, [0.25, 0.5, 0.25], atol=1e-15)


def test_thinning_edges():
    dist = [0.25, 0.5, 0.25]
    assert np.allclose(effective_interferer_distribution(dist, 1.0), dist)
    assert np.allclose(effective_interferer_distribution(dist, 0.0), [1.0, 0.0, 0.0])


def test_thinning_mean_scales():
    rng = np.random.default_rng(7)
    for _ in range(20):
        probs = rng.random(6)
        probs /= probs.sum()
        p_f = float(rng.random())
        out = effective_interferer_distribution(probs, p_f)
        n = np.arange(6)
        assert out.sum() == pytest.approx(1.0, abs=1e-12)
        assert np.dot(n, out) == pytest.approx(p_f * np.dot(n, probs), rel=1e-12)


def test_distribution_validation():
    with pytest.raises(ValueError):
        effective_interferer_distribution([0.5, 0.4], 0.5)  # does not sum to 1
    with pytest.raises(ValueError):
        effective_interferer_distribution([1.5, -0.5], 0.5)
    with pytest.raises(ValueError):
        effective_interferer_distribution([], 0.5)
    with pytest.raises(ValueError):
        effective_interferer_distribution([0.5, 0.5], 1.5)


# ---------------------------------------------------------------- per chirp

def test_chirp_collision_reference_values():
    assert chirp_collision_prob(FRONT_TIMING) == pytest.approx(0.533748701973001, rel=1e-14)
    assert chirp_collision_prob(CORNER_TIMING) == pytest.approx(0.05364583333333333, rel=1e-14)


def test_chirp_collision_adc_clamp():
    spec = small_spec(b_adc_hz=5e8)  # wider than the chirp band
    assert chirp_collision_prob(spec) == pytest.approx(4e-6 / 5e-6, rel=1e-15)


# ---------------------------------------------------------------- frame loss

def test_frame_loss_hand_case():
    # N=4 chirps in 8 slots, K=1, p=0.5.  Cyclic overlap counts are
    # [4,3,2,1,0,1,2,3]; averaging 1-0.5^z gives 0.6484375.  The default
    # form weighs every z by 2/8 (double counting the single full-overlap
    # offset) which lands on 0.765625.
    spec = small_spec()
    assert frame_loss_prob_single(spec, 0.5) == pytest.approx(0.765625, rel=1e-15)
    assert frame_loss_prob_single(spec, 0.5, exact=True) == pytest.approx(0.6484375, rel=1e-15)


def test_frame_loss_edge_probabilities():
    spec = small_spec()
    assert frame_loss_prob_single(spec, 0.0) == 0.0
    assert frame_loss_prob_single(spec, 0.0, exact=True) == 0.0
    # p=1: every overlapped chirp collides, so exact counts offsets with
    # z >= 1: 7 of 8
    assert frame_loss_prob_single(spec, 1.0, exact=True) == pytest.approx(7.0 / 8.0)
    assert frame_loss_prob_single(spec, 1.0) == 1.0  # clamped


def test_frame_loss_gap_bound():
    # the documented bound on the double-count error is duty/n_chirps
    rng = np.random.default_rng(3)
    for _ in range(40):
        n = int(rng.integers(2, 30))
        inv = int(rng.integers(2, 5))
        k = int(rng.integers(1, n + 1))
        p = float(rng.uniform(0.0, 1.0))
        spec = small_spec(n_chirps=n, duty=1.0 / inv, k_ch=k)
        approx = frame_loss_prob_single(spec, p)
        exact = frame_loss_prob_single(spec, p, exact=True)
        assert abs(approx - exact) <= (1.0 / inv) / n + 1e-12


def test_overlap_slot_counts():
    z = _overlap_slot_counts(4, 8)
    assert z.tolist() == [4, 3, 2, 1, 0, 1, 2, 3]
    # overlap counts sum to n_chirps^2 regardless of the duty cycle
    for n, slots in ((5, 10), (7, 21), (3, 12)):
        assert _overlap_slot_counts(n, slots).sum() == n * n


def test_binom_tail_matches_scipy():
    for k, p, z_hi in ((1, 0.5, 10), (3, 0.2, 25), (5, 0.9, 12)):
        tail = _binom_tail_by_overlap(k, p, z_hi)
        for z in range(z_hi + 1):
            ref = stats.binom.sf(k - 1, z, p)
            assert tail[z] == pytest.approx(ref, rel=1e-10, abs=1e-300)


def test_binom_tail_tiny_values_no_cancellation():
    # survival tails far below double-precision cancellation thresholds
    tail = _binom_tail_by_overlap(20, 1e-3, 40)
    ref = stats.binom.sf(19, 40, 1e-3)
    assert ref < 1e-45
    assert tail[40] == pytest.approx(ref, rel=1e-9)
    # the leading term is exactly p^k
    assert _binom_tail_by_overlap(4, 1e-8, 4)[4] == pytest.approx(1e-32, rel=1e-12)


# ---------------------------------------------------------------- schemes

def test_baseline_hand_case():
    # two certain interferers, p_f = p_t = 0.5, M = 2: thinned counts are
    # Binomial(2, 0.5) and P = 0.5*0.25^1... sum_n P_n (1-0.5^n)^2
    spec = small_spec(m=2)
    res = failure_prob_baseline([0.0, 0.0, 1.0], spec, p_f=0.5, p_t_frame=0.5)
    assert res.p_fail == pytest.approx(0.265625, rel=1e-14)
    assert res.scheme is Scheme.BASELINE
    assert res.t_fail_s == pytest.approx(res.t_rf_s / res.p_fail, rel=1e-14)


def test_frame_hopping_hand_case():
    # one certain interferer, M=1 in the front band: p_fail = p_f * p_t_frame
    spec = dataclasses.replace(FRONT_TIMING, m_consecutive=1)
    res = failure_prob_frame_hopping([0.0, 1.0], spec, p_t_frame=0.765625)
    assert res.p_f == pytest.approx(P_F_FRONT, rel=1e-14)
    assert res.p_fail == pytest.approx(0.03976584141274238, rel=1e-13)


def test_chirp_hopping_hand_case():
    # per-chirp collision 0.5*0.5 = 0.25; default frame loss form:
    # (2/8) * sum_{z=1..4} (1 - 0.75^z) = 0.4873046875
    spec = small_spec()
    res = failure_prob_chirp_hopping([0.0, 1.0], spec, p_f=0.5, p_t_chirp=0.5)
    assert res.p_fail == pytest.approx(0.4873046875, rel=1e-14)
    assert res.scheme is Scheme.CHIRP_HOPPING


def test_frame_repetition_time_presets():
    assert frame_repetition_time(FRONT_TIMING) == pytest.approx(0.02568, rel=1e-14)
    assert frame_repetition_time(CORNER_TIMING) == pytest.approx(0.079616, rel=1e-12)


def test_schemes_coincide_at_full_overlap():
    rng = np.random.default_rng(11)
    for _ in range(30):
        n = int(rng.integers(2, 25))
        inv = int(rng.integers(2, 5))
        spec = small_spec(n_chirps=n, duty=1.0 / inv,
                          k_ch=int(rng.integers(1, n + 1)),
                          m=int(rng.integers(1, 4)))
        probs = rng.random(int(rng.integers(2, 6)))
        probs /= probs.sum()
        for exact in (False, True):
            a = failure_prob_baseline(probs, spec, exact, p_f=1.0).p_fail
            b = failure_prob_frame_hopping(probs, spec, exact, p_f=1.0).p_fail
            c = failure_prob_chirp_hopping(probs, spec, exact, p_f=1.0).p_fail
            assert a == pytest.approx(b, rel=1e-12)
            assert a == pytest.approx(c, rel=1e-12)


def test_no_interferers_never_fails():
    spec = small_spec()
    for fn in (failure_prob_baseline, failure_prob_frame_hopping,
               failure_prob_chirp_hopping):
        res = fn([1.0], spec)
        assert res.p_fail == 0.0
        assert res.t_fail_s == math.inf


def test_hopping_beats_baseline_on_sparse_band():
    # plenty of hopping room: random starts should fail far less often
    dist = [0.2, 0.5, 0.3]
    base = failure_prob_baseline(dist, FRONT_TIMING)
    frame = failure_prob_frame_hopping(dist, FRONT_TIMING)
    chirp = failure_prob_chirp_hopping(dist, FRONT_TIMING)
    assert frame.p_fail < base.p_fail
    assert chirp.p_fail < frame.p_fail


# ---------------------------------------------------------------- compass

def test_compass_shrinks_band():
    dist = [0.2, 0.5, 0.3]
    comp = CompassConfig(n_sectors=2, sector_offset_deg=90.0)
    res = failure_prob_with_compass(dist, FRONT_TIMING, comp, Scheme.FRAME_HOPPING)
    assert res.p_f == pytest.approx(freq_overlap_prob(1.5e9, 150e6, 0.5), rel=1e-14)
    assert not res.degenerate_hopping
    # same distribution in half the band: failures can only get more likely
    plain = failure_prob_frame_hopping(dist, FRONT_TIMING)
    assert res.p_fail >= plain.p_fail
    assert res.t_fail_s <= plain.t_fail_s


def test_compass_degenerate_sector():
    # corner chirps sweep half the band; four sectors leave less than one
    # chirp bandwidth per channel, so hopping degenerates to p_f = 1
    comp = CompassConfig(n_sectors=4)
    res = failure_prob_with_compass([0.0, 1.0], CORNER_TIMING, comp, Scheme.CHIRP_HOPPING)
    assert res.degenerate_hopping
    assert res.p_f == 1.0
    pinned = failure_prob_chirp_hopping([0.0, 1.0], CORNER_TIMING, p_f=1.0)
    assert res.p_fail == pytest.approx(pinned.p_fail, rel=1e-14)


def test_compass_rejects_baseline():
    comp = CompassConfig(n_sectors=2)
    with pytest.raises(ValueError):
        failure_prob_with_compass([0.0, 1.0], FRONT_TIMING, comp, Scheme.BASELINE)


# ---------------------------------------------------------------- validation

def test_timing_validation_errors():
    with pytest.raises(ValueError, match="integer slot count"):
        small_spec(n_chirps=5, duty=0.3)
    with pytest.raises(ValueError):
        small_spec(k_ch=9, n_chirps=4)
    with pytest.raises(ValueError):
        small_spec(duty=1.5)
    with pytest.raises(ValueError):
        small_spec(b_total_hz=5e7)  # below the chirp bandwidth
    with pytest.raises(ValueError):
        small_spec(t_chirp_s=6e-6)  # above the repetition interval
    with pytest.raises(ValueError):
        small_spec(x_f=-0.1)
    with pytest.raises(ValueError):
        small_spec(m=0)


def test_slots_per_frame():
    assert small_spec().slots_per_frame == 8
    assert FRONT_TIMING.slots_per_frame == 4000
    assert CORNER_TIMING.slots_per_frame == 6220


def test_time_between_failures():
    assert time_between_failures(0.5, 0.02568) == pytest.approx(0.05136)
    assert time_between_failures(0.0, 1.0) == math.inf
    with pytest.raises(ValueError):
        time_between_failures(1.5, 1.0)
    with pytest.raises(ValueError):
        time_between_failures(0.5, 0.0)


def test_failure_accepts_distribution_object():
    from fmcwsim import InterfererDistribution
    dist = InterfererDistribution(probabilities=np.array([0.5, 0.5]),
                                  max_equivalent_distance_m=100.0, sample_count=10)
    res = failure_prob_frame_hopping(dist, FRONT_TIMING)
    ref = failure_prob_frame_hopping([0.5, 0.5], FRONT_TIMING)
    assert res.p_fail == ref.p_fail
