"""Monte Carlo oracles cross-checking the closed-form failure models.

The estimators simulate collision events directly, at chirp and frame
granularity, so the analytic formulas can be validated against an
independent mechanism.  Every estimator is bit-reproducible given
(seed, trials): trials are consumed in fixed-size blocks whose generators
are spawned from the root seed, so the result never depends on scheduling
or worker count.
"""

import math
from dataclasses import dataclass

import numpy as np

from . import models

_BLOCK = 1 << 15


def chirp_pair_collides(dt_s, df_hz, spec):
    """Signal-level collision predicate for one victim/attacker chirp pair.

    dt_s and df_hz are the attacker's chirp start offsets in time and start
    frequency relative to the victim's chirp.  Collision requires the
    chirps to overlap in time, to share at least x_f of the chirp bandwidth,
    and the instantaneous frequency crossing to fall inside the victim's
    ADC bandwidth.
    """
    if spec.t_chirp_s - abs(dt_s) <= 0.0:
        return False
    if 1.0 - abs(df_hz) / spec.b_chirp_hz < spec.x_f:
        return False
    slope = spec.b_chirp_hz / spec.t_chirp_s
    return abs(df_hz - slope * dt_s) <= spec.b_adc_hz


@dataclass(frozen=True)
class McEstimate:
    mean: float
    std_error: float
    trials: int
    seed: int


def _block_rngs(seed, trials):
    n_blocks = (trials + _BLOCK - 1) // _BLOCK
    children = np.random.SeedSequence(seed).spawn(n_blocks)
    sizes = [_BLOCK] * (n_blocks - 1) + [trials - _BLOCK * (n_blocks - 1)]
    return [(np.random.default_rng(ss), size) for ss, size in zip(children, sizes)]


def _estimate(successes, trials, seed):
    mean = successes / trials
    return McEstimate(mean=mean,
                      std_error=math.sqrt(max(mean * (1.0 - mean), 0.0) / trials),
                      trials=trials, seed=seed)


def mc_freq_overlap(b_total_hz, b_chirp_hz, x_f, trials=1_000_000, seed=0):
    """Draw both sweep placements uniformly and count overlap collisions."""
    if not (0 < b_chirp_hz <= b_total_hz):
        raise ValueError("need 0 < b_chirp_hz <= b_total_hz")
    span = b_total_hz - b_chirp_hz
    need = x_f * b_chirp_hz
    hits = 0
    for rng, size in _block_rngs(seed, trials):
        fv = rng.uniform(0.0, span, size) if span > 0 else np.zeros(size)
        fa = rng.uniform(0.0, span, size) if span > 0 else np.zeros(size)
        overlap = b_chirp_hz - np.abs(fv - fa)
        hits += int(np.count_nonzero(overlap >= need))
    return _estimate(hits, trials, seed)


def _draw_overlaps(rng, shape, n_chirps, slots):
    s = rng.integers(0, slots, shape)
    return (np.maximum(0, n_chirps - s)
            + np.maximum(0, s - (slots - n_chirps))).astype(np.int64)


def mc_frame_loss(spec, p, trials=100_000, seed=0):
    """Simulate single-attacker frame losses at slot granularity.

    Per trial: a uniform cyclic slot offset fixes the overlap count z, then
    z independent per-chirp collisions at probability p are drawn; the
    frame is lost when at least k_ch collide.  This is the exact-offset
    mechanism, so it quantifies (rather than inherits) the double-counted
    full-overlap term of the closed form.
    """
    if not (0 <= p <= 1):
        raise ValueError("per-chirp collision probability must be in [0, 1]")
    slots = spec.slots_per_frame
    hits = 0
    for rng, size in _block_rngs(seed, trials):
        z = _draw_overlaps(rng, size, spec.n_chirps, slots)
        c = rng.binomial(z, p)
        hits += int(np.count_nonzero(c >= spec.k_ch))
    return _estimate(hits, trials, seed)


def mc_system_failure(dist, spec, scheme, trials=100_000, seed=0):
    """Simulate the full failure mechanism for one scheme.

    Per trial: draw the number of potential interferers from dist, then play
    m_consecutive frames.  Baseline draws each attacker's frequency-overlap
    event once and holds it over all frames; frame hopping redraws it per
    frame; chirp hopping moves it inside the frame where every overlapped
    chirp collides with probability p_f * p_t_chirp.  Frame offsets use the
    exact cyclic slot mechanism and are redrawn per frame; a frame is lost
    when any single attacker collides k_ch of its chirps, and the trial
    records a failure when all m frames are lost.
    """
    probs = models._distribution_probs(dist)
    p_f = models.freq_overlap_prob(spec.b_total_hz, spec.b_chirp_hz, spec.x_f)
    p_c = models.chirp_collision_prob(spec)
    n_max = probs.size - 1
    m = spec.m_consecutive
    slots = spec.slots_per_frame
    if n_max == 0:
        return _estimate(0, trials, seed)
    hits = 0
    for rng, size in _block_rngs(seed, trials):
        n = rng.choice(probs.size, size=size, p=probs)
        active = np.arange(n_max)[None, :] < n[:, None]
        z = _draw_overlaps(rng, (size, n_max, m), spec.n_chirps, slots)
        if scheme is models.Scheme.CHIRP_HOPPING:
            c = rng.binomial(z, p_f * p_c)
            attacker_hit = c >= spec.k_ch
        else:
            c = rng.binomial(z, p_c)
            attacker_hit = c >= spec.k_ch
            if scheme is models.Scheme.BASELINE:
                ov = rng.random((size, n_max)) < p_f
                attacker_hit &= ov[:, :, None]
            elif scheme is models.Scheme.FRAME_HOPPING:
                ov = rng.random((size, n_max, m)) < p_f
                attacker_hit &= ov
            else:
                raise ValueError("unknown scheme %r" % (scheme,))
        frame_lost = (attacker_hit & active[:, :, None]).any(axis=1)
        hits += int(np.count_nonzero(frame_lost.all(axis=1)))
    return _estimate(hits, trials, seed)


def enumerate_frame_loss(n_chirps, duty_cycle, k_ch, p):
    """Exhaustive single-attacker frame-loss probability for tiny frames.

    Enumerates every cyclic slot offset and every per-chirp outcome
    explicitly; serves as the independent ground truth for
    frame_loss_prob_single(exact=True).
    """
    slots = round(n_chirps / duty_cycle)
    total = 0.0
    for s in range(slots):
        z = max(0, n_chirps - s) + max(0, s - (slots - n_chirps))
        tail = 0.0
        for hit_count in range(k_ch, z + 1):
            tail += math.comb(z, hit_count) * p ** hit_count * (1 - p) ** (z - hit_count)
        total += tail / slots
    return total


@dataclass(frozen=True)
class CheckRow:
    name: str
    expected: float
    estimate: float
    tolerance: float
    passed: bool
    note: str = ""


def _mc_tolerance(expected, est):
    # the empirical standard error degenerates to zero on rare events with
    # no observed successes; the spread implied by the expected value is
    # the correct yardstick there, so take the wider of the two
    null_se = math.sqrt(max(expected * (1.0 - expected), 0.0) / est.trials)
    return 3.0 * max(est.std_error, null_se)


def _random_small_spec(rng):
    n = int(rng.integers(3, 21))
    inv = int(rng.integers(2, 5))
    b_chirp = float(rng.uniform(50e6, 500e6))
    b_total = b_chirp * float(rng.uniform(1.5, 20.0))
    t_chirp = 5e-6
    t_rep = t_chirp / float(rng.uniform(0.4, 0.9))
    return models.RadarTimingSpec(
        b_total_hz=b_total, b_chirp_hz=b_chirp,
        b_adc_hz=b_chirp * float(rng.uniform(0.3, 1.2)),
        f_beat_max_hz=50e6, t_chirp_s=t_chirp, t_rep_chirp_s=t_rep,
        n_chirps=n, duty_cycle=1.0 / inv, x_f=float(rng.uniform(0.1, 0.9)),
        k_ch=int(rng.integers(1, min(n, 5) + 1)), m_consecutive=int(rng.integers(1, 4)))


def _random_distribution(rng, max_len=5):
    size = int(rng.integers(2, max_len + 1))
    probs = rng.random(size)
    return probs / probs.sum()


def run_validation(trials=200_000, seed=1, freq_overlap_fn=None,
                   frame_loss_fn=None, failure_fns=None):
    """Analytic-vs-simulation check suite; returns one row per check.

    All rows use a 3-standard-error acceptance band.  The closed-form
    frame-loss default double counts the full-overlap offset, so rows that
    compare it against the exact-offset simulation widen the band by the
    computed difference between the verbatim and exact forms.  The *_fn
    hooks exist so a deliberately corrupted formula can be injected to
    prove the suite actually detects disagreement.
    """
    freq_overlap_fn = freq_overlap_fn or models.freq_overlap_prob
    frame_loss_fn = frame_loss_fn or models.frame_loss_prob_single
    failure_fns = failure_fns or {
        models.Scheme.BASELINE: models.failure_prob_baseline,
        models.Scheme.FRAME_HOPPING: models.failure_prob_frame_hopping,
        models.Scheme.CHIRP_HOPPING: models.failure_prob_chirp_hopping,
    }
    rows = []
    rng = np.random.default_rng(seed)

    # frequency overlap: fixed reference point plus random valid triples
    triples = [(3e9, 150e6, 0.5)]
    for _ in range(4):
        b_chirp = float(rng.uniform(5e7, 2e9))
        triples.append((b_chirp * float(rng.uniform(1.2, 10.0)), b_chirp,
                        float(rng.uniform(0.0, 1.0))))
    for b_total, b_chirp, x_f in triples:
        est = mc_freq_overlap(b_total, b_chirp, x_f, trials=trials,
                              seed=int(rng.integers(2 ** 31)))
        expected = freq_overlap_fn(b_total, b_chirp, x_f)
        tol = _mc_tolerance(expected, est)
        rows.append(CheckRow(
            name="freq_overlap b_tot=%.3g b_ch=%.3g x_f=%.2f" % (b_total, b_chirp, x_f),
            expected=expected, estimate=est.mean, tolerance=tol,
            passed=abs(expected - est.mean) <= tol))

    # chirp-pair predicate marginal over time offsets reproduces the
    # per-chirp time factor
    spec = _random_small_spec(rng)
    sub_rng = np.random.default_rng(int(rng.integers(2 ** 31)))
    n_pairs = min(trials, 200_000)
    dts = sub_rng.uniform(-spec.t_rep_chirp_s, spec.t_rep_chirp_s, n_pairs)
    hits = sum(chirp_pair_collides(dt, 0.0, spec) for dt in dts)
    est_mean = hits / n_pairs
    expected = models.chirp_collision_prob(spec)
    tol = _mc_tolerance(expected, McEstimate(est_mean, math.sqrt(
        max(est_mean * (1 - est_mean), 0.0) / n_pairs), n_pairs, 0))
    rows.append(CheckRow(name="chirp_pair time marginal", expected=expected,
                         estimate=est_mean, tolerance=tol,
                         passed=abs(expected - est_mean) <= tol))

    # frame loss: exact form against exhaustive enumeration, verbatim form
    # against its documented bound, simulation against the exact form
    for n, inv, k, p in ((4, 2, 1, 0.5), (6, 3, 2, 0.3), (8, 2, 3, 0.7)):
        spec_small = models.RadarTimingSpec(
            b_total_hz=1e9, b_chirp_hz=1e8, b_adc_hz=1e8, f_beat_max_hz=5e7,
            t_chirp_s=4e-6, t_rep_chirp_s=5e-6, n_chirps=n, duty_cycle=1.0 / inv,
            x_f=0.5, k_ch=k, m_consecutive=1)
        exact = frame_loss_fn(spec_small, p, exact=True)
        brute = enumerate_frame_loss(n, 1.0 / inv, k, p)
        rows.append(CheckRow(name="frame_loss exact enum n=%d" % n, expected=brute,
                             estimate=exact, tolerance=1e-12,
                             passed=abs(exact - brute) <= 1e-12))
        verbatim = frame_loss_fn(spec_small, p, exact=False)
        bound = (1.0 / inv) / n
        rows.append(CheckRow(name="frame_loss approx bound n=%d" % n, expected=exact,
                             estimate=verbatim, tolerance=bound,
                             passed=abs(verbatim - exact) <= bound,
                             note="documented double-count bound"))
    spec_mc = models.RadarTimingSpec(
        b_total_hz=1e9, b_chirp_hz=1e8, b_adc_hz=1e8, f_beat_max_hz=5e7,
        t_chirp_s=4e-6, t_rep_chirp_s=5e-6, n_chirps=20, duty_cycle=0.5,
        x_f=0.5, k_ch=2, m_consecutive=1)
    est = mc_frame_loss(spec_mc, 0.1, trials=trials, seed=int(rng.integers(2 ** 31)))
    exact = frame_loss_fn(spec_mc, 0.1, exact=True)
    tol = _mc_tolerance(exact, est)
    rows.append(CheckRow(name="frame_loss simulation n=20", expected=exact,
                         estimate=est.mean, tolerance=tol,
                         passed=abs(exact - est.mean) <= tol))

    # full compositions: simulation against each scheme, exact offsets
    for i in range(5):
        spec_i = _random_small_spec(rng)
        dist_i = _random_distribution(rng)
        for scheme, fn in failure_fns.items():
            expected = fn(dist_i, spec_i, exact_offsets=True).p_fail
            verbatim = fn(dist_i, spec_i, exact_offsets=False).p_fail
            est = mc_system_failure(dist_i, spec_i, scheme, trials=trials,
                                    seed=int(rng.integers(2 ** 31)))
            tol = _mc_tolerance(expected, est)
            rows.append(CheckRow(
                name="system %s config %d" % (scheme.value, i),
                expected=expected, estimate=est.mean, tolerance=tol,
                passed=abs(expected - est.mean) <= tol,
                note="verbatim form differs by %.2e" % abs(verbatim - expected)))
    return rows
