"""Closed-form failure probabilities for mutually interfering FMCW radars.

A radar transmits frames of ``n_chirps`` chirps, one per repetition interval
``t_rep_chirp_s``, and the active part covers a fraction ``duty_cycle`` of
the frame repetition interval.  An interfering chirp collides with a victim
chirp when the two sweeps overlap by at least a fraction ``x_f`` of the
chirp bandwidth and the crossing lands inside the victim's ADC bandwidth.
A frame is lost once at least ``k_ch`` of its chirps are collided, and the
radar fails (a target disappears from tracking) after ``m_consecutive``
lost frames in a row.

Three operating schemes are compared:

* baseline - every radar keeps a fixed start frequency, so a frequency
  overlap, once present, persists over consecutive frames;
* frame hopping - a fresh random start frequency per frame;
* chirp hopping - a fresh random start frequency per chirp.

Compass sectoring splits the total band over ``n_sectors`` heading-derived
channels, trading attacker count against per-channel bandwidth.
"""

import enum
import math
from dataclasses import dataclass, replace

import numpy as np


class Scheme(enum.Enum):
    BASELINE = "baseline"
    FRAME_HOPPING = "frame_hopping"
    CHIRP_HOPPING = "chirp_hopping"


@dataclass(frozen=True)
class RadarTimingSpec:
    """Chirp/frame timing and the collision thresholds of one radar class."""

    b_total_hz: float
    b_chirp_hz: float
    b_adc_hz: float
    f_beat_max_hz: float
    t_chirp_s: float
    t_rep_chirp_s: float
    n_chirps: int
    duty_cycle: float
    x_f: float
    k_ch: int
    m_consecutive: int

    def __post_init__(self):
        if not (0 < self.b_chirp_hz <= self.b_total_hz):
            raise ValueError("need 0 < b_chirp_hz <= b_total_hz")
        if self.b_adc_hz <= 0 or self.f_beat_max_hz <= 0:
            raise ValueError("b_adc_hz and f_beat_max_hz must be positive")
        if not (0 < self.t_chirp_s <= self.t_rep_chirp_s):
            raise ValueError("need 0 < t_chirp_s <= t_rep_chirp_s")
        if self.n_chirps < 1:
            raise ValueError("n_chirps must be >= 1")
        if not (0 < self.duty_cycle <= 1):
            raise ValueError("duty_cycle must be in (0, 1]")
        slots = self.n_chirps / self.duty_cycle
        if abs(slots - round(slots)) > 1e-9:
            raise ValueError("n_chirps / duty_cycle must be an integer slot count")
        if not (0 <= self.x_f <= 1):
            raise ValueError("x_f must be in [0, 1]")
        if not (1 <= self.k_ch <= self.n_chirps):
            raise ValueError("need 1 <= k_ch <= n_chirps")
        if self.m_consecutive < 1:
            raise ValueError("m_consecutive must be >= 1")

    @property
    def slots_per_frame(self):
        """Chirp repetition intervals in one frame repetition interval."""
        return round(self.n_chirps / self.duty_cycle)


@dataclass(frozen=True)
class FailureResult:
    scheme: Scheme
    p_fail: float
    t_fail_s: float
    t_rf_s: float
    p_f: float
    p_single_frame: float
    degenerate_hopping: bool = False


def frame_repetition_time(spec):
    """Frame-to-frame period: active chirps stretched by the duty cycle."""
    return spec.t_rep_chirp_s * spec.n_chirps / spec.duty_cycle


def freq_overlap_prob(b_total_hz, b_chirp_hz, x_f):
    """Probability that two uniform random sweeps overlap enough to collide.

    Both radars place a b_chirp wide sweep uniformly in the same b_total
    band; collision requires at least x_f * b_chirp of common bandwidth.
    The start-frequency difference is triangular, which gives a closed form.
    Degenerate bands where every placement collides return 1.
    """
    if not (0 < b_chirp_hz <= b_total_hz):
        raise ValueError("need 0 < b_chirp_hz <= b_total_hz")
    if not (0 <= x_f <= 1):
        raise ValueError("x_f must be in [0, 1]")
    m = b_total_hz - b_chirp_hz
    if m <= 0:
        return 1.0
    delta = (1.0 - x_f) * b_chirp_hz
    if delta >= m:
        return 1.0
    return delta * (2.0 * m - delta) / (m * m)


def _distribution_probs(dist):
    probs = np.asarray(getattr(dist, "probabilities", dist), dtype=float)
    if probs.ndim != 1 or probs.size == 0:
        raise ValueError("distribution must be a non-empty 1-D probability vector")
    if np.any(probs < -1e-12) or abs(probs.sum() - 1.0) > 1e-9:
        raise ValueError("distribution probabilities must be >= 0 and sum to 1")
    return np.clip(probs, 0.0, 1.0)


def effective_interferer_distribution(dist, p_f):
    """Thin an interferer-count distribution by the frequency-overlap odds.

    Each of n potential interferers independently stays with probability
    p_f, so the count distribution binomially contracts.  The mean scales
    exactly by p_f.
    """
    probs = _distribution_probs(dist)
    if not (0 <= p_f <= 1):
        raise ValueError("p_f must be in [0, 1]")
    out = np.zeros_like(probs)
    for n in range(probs.size):
        acc = 0.0
        for j in range(n, probs.size):
            acc += probs[j] * math.comb(j, n) * p_f ** n * (1.0 - p_f) ** (j - n)
        out[n] = acc
    return out


def chirp_collision_prob(spec):
    """Per-chirp collision probability given an in-band interferer.

    Time alignment of one active chirp inside the repetition interval times
    the chance that the sweep crossing falls inside the ADC bandwidth.
    """
    return (spec.t_chirp_s / spec.t_rep_chirp_s) * min(1.0, spec.b_adc_hz / spec.b_chirp_hz)


def _binom_tail_by_overlap(k, p, z_hi):
    # tail[z] = P[Binomial(z, p) >= k] for z = 0..z_hi, built from the
    # recurrence tail(z+1) = tail(z) + p * pmf(z, k-1).  Summing upward
    # keeps tiny tails exact instead of cancelling them against 1.
    tail = np.zeros(z_hi + 1)
    if k > z_hi:
        return tail
    if p <= 0.0:
        return tail
    if p >= 1.0:
        tail[k:] = 1.0
        return tail
    logp = math.log(p)
    logq = math.log1p(-p)
    logfact = np.concatenate(([0.0], np.cumsum(np.log(np.arange(1, z_hi + 1)))))
    # pmf(u, k-1) for u = k-1..z_hi-1 drives the increments above z = k
    uu = np.arange(k - 1, z_hi, dtype=np.int64)
    logpmf = (logfact[uu] - logfact[k - 1] - logfact[uu - (k - 1)]
              + (k - 1) * logp + (uu - (k - 1)) * logq)
    increments = p * np.exp(logpmf)
    tail[k] = math.exp(k * logp)
    if z_hi > k:
        tail[k + 1:] = tail[k] + np.cumsum(increments[1:])
    return np.clip(tail, 0.0, 1.0)


def _overlap_slot_counts(n_chirps, slots):
    # z(s): chirp slots of the victim frame covered by an attacker frame
    # starting s slots later (cyclically) within the frame repetition
    # interval.  Full overlap happens at exactly one offset, every partial
    # overlap at two (one per side).
    s = np.arange(slots)
    return (np.maximum(0, n_chirps - s)
            + np.maximum(0, s - (slots - n_chirps))).astype(np.int64)


def frame_loss_prob_single(spec, p, exact=False):
    """Probability that one interferer makes the victim lose a frame.

    ``p`` is the per-chirp collision probability during overlapped slots.
    The attacker's frame lands at a uniform random slot offset; the victim
    loses the frame when at least k_ch of the z overlapped chirps collide.
    The default closed form weighs every overlap count z by 2/slots, which
    double counts the single full-overlap offset; ``exact=True`` enumerates
    the slot offsets instead (the difference is bounded by
    duty_cycle / n_chirps).
    """
    if not (0 <= p <= 1):
        raise ValueError("per-chirp collision probability must be in [0, 1]")
    n = spec.n_chirps
    slots = spec.slots_per_frame
    tail = _binom_tail_by_overlap(spec.k_ch, p, n)
    if exact:
        z = _overlap_slot_counts(n, slots)
        return float(min(1.0, tail[z].sum() / slots))
    return float(min(1.0, 2.0 / slots * tail[spec.k_ch:].sum()))


def _mixture_failure(probs, p_frame, m):
    # P[failure] = sum_n P_n * (1 - (1 - p_frame)^n)^m over n >= 1 attackers
    n = np.arange(probs.size, dtype=float)
    if p_frame <= 0.0:
        return 0.0
    per_n = -np.expm1(n * math.log1p(-p_frame)) if p_frame < 1.0 else (n > 0).astype(float)
    per_n[0] = 0.0
    return float(min(1.0, np.dot(probs, per_n ** m)))


def failure_prob_baseline(dist, spec, exact_offsets=False, p_f=None, p_t_frame=None):
    """Failure probability with fixed start frequencies.

    Frequency overlaps persist across frames, so the interferer count is
    thinned once by p_f and each remaining attacker threatens every one of
    the m consecutive frames.
    """
    probs = _distribution_probs(dist)
    if p_f is None:
        p_f = freq_overlap_prob(spec.b_total_hz, spec.b_chirp_hz, spec.x_f)
    if p_t_frame is None:
        p_t_frame = frame_loss_prob_single(spec, chirp_collision_prob(spec), exact_offsets)
    thinned = effective_interferer_distribution(probs, p_f)
    p_fail = _mixture_failure(thinned, p_t_frame, spec.m_consecutive)
    t_rf = frame_repetition_time(spec)
    return FailureResult(Scheme.BASELINE, p_fail, time_between_failures(p_fail, t_rf),
                         t_rf, p_f, p_t_frame)


def failure_prob_frame_hopping(dist, spec, exact_offsets=False, p_f=None, p_t_frame=None):
    """Failure probability with a fresh random start frequency per frame.

    Every frame redraws the overlap event, so each attacker contributes an
    independent p_f * p_t_frame per frame and no thinning carries over.
    """
    probs = _distribution_probs(dist)
    if p_f is None:
        p_f = freq_overlap_prob(spec.b_total_hz, spec.b_chirp_hz, spec.x_f)
    if p_t_frame is None:
        p_t_frame = frame_loss_prob_single(spec, chirp_collision_prob(spec), exact_offsets)
    p_fail = _mixture_failure(probs, p_f * p_t_frame, spec.m_consecutive)
    t_rf = frame_repetition_time(spec)
    return FailureResult(Scheme.FRAME_HOPPING, p_fail,
                         time_between_failures(p_fail, t_rf), t_rf, p_f, p_f * p_t_frame)


def failure_prob_chirp_hopping(dist, spec, exact_offsets=False, p_f=None, p_t_chirp=None):
    """Failure probability with a fresh random start frequency per chirp.

    The overlap lottery moves inside the frame: each overlapped chirp
    collides with probability p_f * p_t_chirp, and losing a frame still
    takes k_ch collided chirps.
    """
    probs = _distribution_probs(dist)
    if p_f is None:
        p_f = freq_overlap_prob(spec.b_total_hz, spec.b_chirp_hz, spec.x_f)
    if p_t_chirp is None:
        p_t_chirp = chirp_collision_prob(spec)
    p_single = frame_loss_prob_single(spec, p_f * p_t_chirp, exact_offsets)
    p_fail = _mixture_failure(probs, p_single, spec.m_consecutive)
    t_rf = frame_repetition_time(spec)
    return FailureResult(Scheme.CHIRP_HOPPING, p_fail,
                         time_between_failures(p_fail, t_rf), t_rf, p_f, p_single)


def failure_prob_with_compass(dist, spec, compass, scheme, exact_offsets=False):
    """Hopping-scheme failure under compass sectoring.

    The band shrinks to b_total / n_sectors; pass the interferer
    distribution observed under the matching compass mode (same-channel
    filtered for the effective mode, unfiltered for the worst case).  A
    sector bandwidth at or below one chirp bandwidth cannot hop at all and
    is flagged degenerate with p_f = 1.
    """
    if scheme not in (Scheme.FRAME_HOPPING, Scheme.CHIRP_HOPPING):
        raise ValueError("compass sectoring applies to the hopping schemes")
    if compass.n_sectors < 1:
        raise ValueError("n_sectors must be >= 1")
    b_eff = spec.b_total_hz / compass.n_sectors
    degenerate = b_eff <= spec.b_chirp_hz
    p_f = 1.0 if degenerate else freq_overlap_prob(b_eff, spec.b_chirp_hz, spec.x_f)
    if scheme is Scheme.FRAME_HOPPING:
        res = failure_prob_frame_hopping(dist, spec, exact_offsets, p_f=p_f)
    else:
        res = failure_prob_chirp_hopping(dist, spec, exact_offsets, p_f=p_f)
    return replace(res, degenerate_hopping=degenerate)


def time_between_failures(p_fail, t_rf_s):
    """Mean time between radar failures; infinite when failures never occur."""
    if not (0 <= p_fail <= 1):
        raise ValueError("p_fail must be in [0, 1]")
    if t_rf_s <= 0:
        raise ValueError("t_rf_s must be positive")
    if p_fail == 0.0:
        return math.inf
    return t_rf_s / p_fail
