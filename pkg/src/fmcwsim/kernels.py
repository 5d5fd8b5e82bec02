"""Hot 2-D geometry kernels: sight-line blockage and interference-path search.

Each kernel exists twice: a scalar-loop version compiled with numba and a
vectorized numpy twin.  Both use the same floating-point expressions so the
selected backend never changes results, only speed.

A rectangle pack is a (V, 6) float64 array of
``[cx, cy, half_length, half_width, cos(heading), sin(heading)]`` rows,
one per vehicle footprint.
"""

import numpy as np

from .accel import NUMBA_ENABLED, njit

PATH_NONE = 0
PATH_DIRECT = 1
PATH_REFLECTED = 2

# A reflection leg ends exactly on the reflecting vehicle's outline, so the
# reflector is tested against the leg shrunk by this factor toward the other
# endpoint: boundary grazing never blocks, crossing the body to reach a
# far-side reflection point still does.
_LEG_SHRINK = 1.0 - 1e-7


def _segment_blocked_scalar(ax, ay, bx, by, rects, skip0, skip1, skip2):
    # Open-segment test: blocked iff a positive-length piece of (a, b) lies
    # strictly inside some non-excluded rectangle.  Corner grazing and
    # running exactly along an edge do not block.
    n = rects.shape[0]
    for i in range(n):
        if i == skip0 or i == skip1 or i == skip2:
            continue
        cx = rects[i, 0]
        cy = rects[i, 1]
        hl = rects[i, 2]
        hw = rects[i, 3]
        ch = rects[i, 4]
        sh = rects[i, 5]
        dxa = ax - cx
        dya = ay - cy
        lax = dxa * ch + dya * sh
        lay = -dxa * sh + dya * ch
        dxb = bx - cx
        dyb = by - cy
        lbx = dxb * ch + dyb * sh
        lby = -dxb * sh + dyb * ch
        dx = lbx - lax
        dy = lby - lay
        # Liang-Barsky clip against [-hl, hl] x [-hw, hw] in the local frame
        t0 = 0.0
        t1 = 1.0
        ok = True
        for side in range(4):
            if side == 0:
                p = -dx
                q = lax + hl
            elif side == 1:
                p = dx
                q = hl - lax
            elif side == 2:
                p = -dy
                q = lay + hw
            else:
                p = dy
                q = hw - lay
            if p == 0.0:
                if q < 0.0:
                    ok = False
                    break
            else:
                r = q / p
                if p < 0.0:
                    if r > t1:
                        ok = False
                        break
                    if r > t0:
                        t0 = r
                else:
                    if r < t0:
                        ok = False
                        break
                    if r < t1:
                        t1 = r
        if not ok or t1 <= t0:
            continue
        tm = 0.5 * (t0 + t1)
        mx = lax + tm * dx
        my = lay + tm * dy
        if -hl < mx < hl and -hw < my < hw:
            return True
    return False


def _segment_blocked_numpy(ax, ay, bx, by, rects, skip0, skip1, skip2):
    if rects.shape[0] == 0:
        return False
    cx = rects[:, 0]
    cy = rects[:, 1]
    hl = rects[:, 2]
    hw = rects[:, 3]
    ch = rects[:, 4]
    sh = rects[:, 5]
    dxa = ax - cx
    dya = ay - cy
    lax = dxa * ch + dya * sh
    lay = -dxa * sh + dya * ch
    dxb = bx - cx
    dyb = by - cy
    lbx = dxb * ch + dyb * sh
    lby = -dxb * sh + dyb * ch
    dx = lbx - lax
    dy = lby - lay
    t0 = np.zeros(cx.shape[0])
    t1 = np.ones(cx.shape[0])
    ok = np.ones(cx.shape[0], dtype=np.bool_)
    for p, q in ((-dx, lax + hl), (dx, hl - lax), (-dy, lay + hw), (dy, hw - lay)):
        par = p == 0.0
        ok &= ~(par & (q < 0.0))
        r = q / np.where(par, 1.0, p)
        entering = p < 0.0
        t0 = np.where(entering, np.maximum(t0, r), t0)
        t1 = np.where(~par & ~entering, np.minimum(t1, r), t1)
    ok &= t1 > t0
    tm = 0.5 * (t0 + t1)
    mx = lax + tm * dx
    my = lay + tm * dy
    ok &= (-hl < mx) & (mx < hl) & (-hw < my) & (my < hw)
    if skip0 >= 0:
        ok[skip0] = False
    if skip1 >= 0:
        ok[skip1] = False
    if skip2 >= 0:
        ok[skip2] = False
    return bool(ok.any())


def _find_paths_scalar(vi, rpos, rdir, rcoshalf, rveh, rchan, same_channel_only,
                       rects, rpts, vdiag, d_max, coef, bound2,
                       kind, dref, d1out, d2out, rvehout, rptout):
    # For one victim radar, classify every other radar as no path / direct /
    # reflected.  Direct needs mutual field-of-view and a clear sight line;
    # otherwise the reflected path with minimal d1*d2 over all reflection
    # points of third vehicles is taken.  Entries beyond d_max are dropped.
    nr = rpos.shape[0]
    nv = rects.shape[0]
    vx = rpos[vi, 0]
    vy = rpos[vi, 1]
    vveh = rveh[vi]
    vchan = rchan[vi]
    for j in range(nr):
        kind[j] = PATH_NONE
        dref[j] = 0.0
        d1out[j] = 0.0
        d2out[j] = 0.0
        rvehout[j] = -1
        rptout[j] = -1
        if j == vi or rveh[j] == vveh:
            continue
        if same_channel_only and rchan[j] != vchan:
            continue
        aveh = rveh[j]
        ax = rpos[j, 0]
        ay = rpos[j, 1]
        ddx = ax - vx
        ddy = ay - vy
        dist2 = ddx * ddx + ddy * ddy
        if dist2 > 0.0:
            dist = np.sqrt(dist2)
            sees_attacker = rdir[vi, 0] * ddx + rdir[vi, 1] * ddy >= rcoshalf[vi] * dist
            sees_victim = -(rdir[j, 0] * ddx + rdir[j, 1] * ddy) >= rcoshalf[j] * dist
            if sees_attacker and sees_victim and not _segment_blocked_scalar(
                    ax, ay, vx, vy, rects, aveh, vveh, -1):
                if dist <= d_max:
                    kind[j] = PATH_DIRECT
                    dref[j] = dist
                    d1out[j] = dist
                continue
        best = np.inf
        bveh = -1
        bpt = -1
        bd1sq = 0.0
        bd2sq = 0.0
        for w in range(nv):
            if w == aveh or w == vveh:
                continue
            tdx = rects[w, 0] - ax
            tdy = rects[w, 1] - ay
            da = np.sqrt(tdx * tdx + tdy * tdy)
            tdx = rects[w, 0] - vx
            tdy = rects[w, 1] - vy
            dv = np.sqrt(tdx * tdx + tdy * tdy)
            la = da - vdiag[w]
            if la < 0.0:
                la = 0.0
            lv = dv - vdiag[w]
            if lv < 0.0:
                lv = 0.0
            lb = (la * la) * (lv * lv)
            if lb > bound2 or lb >= best:
                continue
            for t in range(8):
                px = rpts[w, t, 0]
                py = rpts[w, t, 1]
                e1x = px - ax
                e1y = py - ay
                d1sq = e1x * e1x + e1y * e1y
                e2x = px - vx
                e2y = py - vy
                d2sq = e2x * e2x + e2y * e2y
                if d1sq <= 0.0 or d2sq <= 0.0:
                    continue
                metric = d1sq * d2sq
                if metric > bound2 or metric >= best:
                    continue
                d1 = np.sqrt(d1sq)
                d2 = np.sqrt(d2sq)
                if rdir[vi, 0] * e2x + rdir[vi, 1] * e2y < rcoshalf[vi] * d2:
                    continue
                if rdir[j, 0] * e1x + rdir[j, 1] * e1y < rcoshalf[j] * d1:
                    continue
                if _segment_blocked_scalar(ax, ay, px, py, rects, aveh, vveh, w):
                    continue
                if _segment_blocked_scalar(px, py, vx, vy, rects, aveh, vveh, w):
                    continue
                qx = ax + (px - ax) * _LEG_SHRINK
                qy = ay + (py - ay) * _LEG_SHRINK
                if _segment_blocked_scalar(ax, ay, qx, qy, rects[w:w + 1],
                                           -1, -1, -1):
                    continue
                qx = vx + (px - vx) * _LEG_SHRINK
                qy = vy + (py - vy) * _LEG_SHRINK
                if _segment_blocked_scalar(vx, vy, qx, qy, rects[w:w + 1],
                                           -1, -1, -1):
                    continue
                best = metric
                bveh = w
                bpt = t
                bd1sq = d1sq
                bd2sq = d2sq
        if bveh >= 0:
            kind[j] = PATH_REFLECTED
            d1out[j] = np.sqrt(bd1sq)
            d2out[j] = np.sqrt(bd2sq)
            dref[j] = np.sqrt(coef * bd1sq * bd2sq)
            rvehout[j] = bveh
            rptout[j] = bpt


def _find_paths_numpy(vi, rpos, rdir, rcoshalf, rveh, rchan, same_channel_only,
                      rects, rpts, vdiag, d_max, coef, bound2,
                      kind, dref, d1out, d2out, rvehout, rptout):
    nr = rpos.shape[0]
    vx = rpos[vi, 0]
    vy = rpos[vi, 1]
    vveh = rveh[vi]
    vchan = rchan[vi]
    px = rpts[:, :, 0]
    py = rpts[:, :, 1]
    e2x = px - vx
    e2y = py - vy
    d2sq = e2x * e2x + e2y * e2y
    fov_v = rdir[vi, 0] * e2x + rdir[vi, 1] * e2y >= rcoshalf[vi] * np.sqrt(d2sq)
    widx = np.repeat(np.arange(rpts.shape[0]), 8)
    tidx = np.tile(np.arange(8), rpts.shape[0])
    for j in range(nr):
        kind[j] = PATH_NONE
        dref[j] = 0.0
        d1out[j] = 0.0
        d2out[j] = 0.0
        rvehout[j] = -1
        rptout[j] = -1
        if j == vi or rveh[j] == vveh:
            continue
        if same_channel_only and rchan[j] != vchan:
            continue
        aveh = rveh[j]
        ax = rpos[j, 0]
        ay = rpos[j, 1]
        ddx = ax - vx
        ddy = ay - vy
        dist2 = ddx * ddx + ddy * ddy
        if dist2 > 0.0:
            dist = np.sqrt(dist2)
            sees_attacker = rdir[vi, 0] * ddx + rdir[vi, 1] * ddy >= rcoshalf[vi] * dist
            sees_victim = -(rdir[j, 0] * ddx + rdir[j, 1] * ddy) >= rcoshalf[j] * dist
            if sees_attacker and sees_victim and not _segment_blocked_numpy(
                    ax, ay, vx, vy, rects, aveh, vveh, -1):
                if dist <= d_max:
                    kind[j] = PATH_DIRECT
                    dref[j] = dist
                    d1out[j] = dist
                continue
        e1x = px - ax
        e1y = py - ay
        d1sq = e1x * e1x + e1y * e1y
        metric = d1sq * d2sq
        valid = (d1sq > 0.0) & (d2sq > 0.0) & (metric <= bound2) & fov_v
        valid &= rdir[j, 0] * e1x + rdir[j, 1] * e1y >= rcoshalf[j] * np.sqrt(d1sq)
        valid[aveh, :] = False
        valid[vveh, :] = False
        flat = valid.ravel()
        cand = np.flatnonzero(flat)
        if cand.size == 0:
            continue
        mflat = metric.ravel()[cand]
        order = cand[np.lexsort((tidx[cand], widx[cand], mflat))]
        for c in order:
            w = widx[c]
            t = tidx[c]
            cpx = rpts[w, t, 0]
            cpy = rpts[w, t, 1]
            if _segment_blocked_numpy(ax, ay, cpx, cpy, rects, aveh, vveh, w):
                continue
            if _segment_blocked_numpy(cpx, cpy, vx, vy, rects, aveh, vveh, w):
                continue
            qx = ax + (cpx - ax) * _LEG_SHRINK
            qy = ay + (cpy - ay) * _LEG_SHRINK
            if _segment_blocked_numpy(ax, ay, qx, qy, rects[w:w + 1],
                                      -1, -1, -1):
                continue
            qx = vx + (cpx - vx) * _LEG_SHRINK
            qy = vy + (cpy - vy) * _LEG_SHRINK
            if _segment_blocked_numpy(vx, vy, qx, qy, rects[w:w + 1],
                                      -1, -1, -1):
                continue
            kind[j] = PATH_REFLECTED
            d1out[j] = np.sqrt(d1sq[w, t])
            d2out[j] = np.sqrt(d2sq[w, t])
            dref[j] = np.sqrt(coef * d1sq[w, t] * d2sq[w, t])
            rvehout[j] = w
            rptout[j] = t
            break


if NUMBA_ENABLED:
    _segment_blocked_scalar = njit(cache=True, nogil=True)(_segment_blocked_scalar)
    _find_paths_scalar = njit(cache=True, nogil=True)(_find_paths_scalar)


def segment_blocked_kernel(ax, ay, bx, by, rects, skip0=-1, skip1=-1, skip2=-1):
    if NUMBA_ENABLED:
        return bool(_segment_blocked_scalar(ax, ay, bx, by, rects, skip0, skip1, skip2))
    return _segment_blocked_numpy(ax, ay, bx, by, rects, skip0, skip1, skip2)


def find_paths_kernel(vi, rpos, rdir, rcoshalf, rveh, rchan, same_channel_only,
                      rects, rpts, vdiag, d_max, coef, bound2, backend=None):
    """Run the path search for one victim; returns per-radar result arrays."""
    nr = rpos.shape[0]
    kind = np.zeros(nr, dtype=np.int64)
    dref = np.zeros(nr)
    d1 = np.zeros(nr)
    d2 = np.zeros(nr)
    rveh_out = np.full(nr, -1, dtype=np.int64)
    rpt_out = np.full(nr, -1, dtype=np.int64)
    if backend is None:
        backend = "numba" if NUMBA_ENABLED else "numpy"
    impl = _find_paths_scalar if backend == "numba" else _find_paths_numpy
    impl(vi, rpos, rdir, rcoshalf, rveh, rchan, same_channel_only,
         rects, rpts, vdiag, d_max, coef, bound2,
         kind, dref, d1, d2, rveh_out, rpt_out)
    return kind, dref, d1, d2, rveh_out, rpt_out
