"""Small deterministic SVG plot writer.

Output must be byte-stable across runs and machines, so axes, ticks, and
colors are computed with plain arithmetic and coordinates use fixed
formatting.  Covers exactly what the command line tools need: line plots
with an optional log y axis, dashed horizontal reference lines, legends,
and bar charts.  Infinite y values are drawn as markers pinned to the top
of the frame instead of being dropped silently.
"""

import math
from dataclasses import dataclass, field
from xml.sax.saxutils import escape

_PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd",
            "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f")

_MARGIN_L = 74.0
_MARGIN_R = 18.0
_MARGIN_T = 34.0
_MARGIN_B = 52.0


@dataclass
class Series:
    label: str
    x: list
    y: list
    dashed: bool = False


@dataclass
class RefLine:
    y: float
    label: str = ""


def _fmt(v):
    return "%.2f" % v


def _tick_label(v):
    if v != 0 and (abs(v) >= 1e4 or abs(v) < 1e-3):
        return "%.0e" % v
    return "%g" % v


def _nice_step(span, target=6):
    if span <= 0:
        return 1.0
    raw = span / target
    mag = 10.0 ** math.floor(math.log10(raw))
    for mult in (1.0, 2.0, 5.0):
        if raw <= mult * mag:
            return mult * mag
    return 10.0 * mag


def _linear_ticks(lo, hi):
    step = _nice_step(hi - lo)
    first = math.ceil(lo / step - 1e-9) * step
    ticks = []
    t = first
    while t <= hi + 1e-9 * step:
        ticks.append(0.0 if abs(t) < 1e-12 * step else t)
        t += step
    return ticks


def _decade_ticks(lo_exp, hi_exp):
    step = max(1, (hi_exp - lo_exp) // 8)
    return [10.0 ** e for e in range(lo_exp, hi_exp + 1, step)]


class _Frame:
    def __init__(self, width, height, x_range, y_range, logy):
        self.width = width
        self.height = height
        self.x0, self.x1 = x_range
        self.y0, self.y1 = y_range
        self.logy = logy
        self.px0 = _MARGIN_L
        self.px1 = width - _MARGIN_R
        self.py0 = height - _MARGIN_B
        self.py1 = _MARGIN_T

    def sx(self, x):
        if self.x1 == self.x0:
            return 0.5 * (self.px0 + self.px1)
        return self.px0 + (x - self.x0) / (self.x1 - self.x0) * (self.px1 - self.px0)

    def sy(self, y):
        if self.logy:
            y = math.log10(y)
        if self.y1 == self.y0:
            return 0.5 * (self.py0 + self.py1)
        return self.py0 + (y - self.y0) / (self.y1 - self.y0) * (self.py1 - self.py0)


def _axis_parts(frame, x_ticks, y_ticks, xlabel, ylabel, title):
    parts = []
    parts.append('<rect x="%s" y="%s" width="%s" height="%s" fill="none" '
                 'stroke="#444444" stroke-width="1"/>' % (
                     _fmt(frame.px0), _fmt(frame.py1),
                     _fmt(frame.px1 - frame.px0), _fmt(frame.py0 - frame.py1)))
    for t in x_ticks:
        px = frame.sx(t)
        parts.append('<line x1="%s" y1="%s" x2="%s" y2="%s" stroke="#dddddd" '
                     'stroke-width="1"/>' % (_fmt(px), _fmt(frame.py1),
                                             _fmt(px), _fmt(frame.py0)))
        parts.append('<text x="%s" y="%s" font-size="11" text-anchor="middle" '
                     'fill="#333333">%s</text>' % (
                         _fmt(px), _fmt(frame.py0 + 16), escape(_tick_label(t))))
    for t in y_ticks:
        py = frame.sy(t)
        parts.append('<line x1="%s" y1="%s" x2="%s" y2="%s" stroke="#dddddd" '
                     'stroke-width="1"/>' % (_fmt(frame.px0), _fmt(py),
                                             _fmt(frame.px1), _fmt(py)))
        parts.append('<text x="%s" y="%s" font-size="11" text-anchor="end" '
                     'fill="#333333">%s</text>' % (
                         _fmt(frame.px0 - 6), _fmt(py + 4), escape(_tick_label(t))))
    parts.append('<text x="%s" y="%s" font-size="12" text-anchor="middle" '
                 'fill="#111111">%s</text>' % (
                     _fmt(0.5 * (frame.px0 + frame.px1)),
                     _fmt(frame.height - 14), escape(xlabel)))
    parts.append('<text x="16" y="%s" font-size="12" text-anchor="middle" '
                 'fill="#111111" transform="rotate(-90 16 %s)">%s</text>' % (
                     _fmt(0.5 * (frame.py0 + frame.py1)),
                     _fmt(0.5 * (frame.py0 + frame.py1)), escape(ylabel)))
    if title:
        parts.append('<text x="%s" y="20" font-size="13" text-anchor="middle" '
                     'fill="#111111">%s</text>' % (
                         _fmt(0.5 * (frame.px0 + frame.px1)), escape(title)))
    return parts


def _svg(width, height, parts):
    body = "\n".join(parts)
    return ('<svg xmlns="http://www.w3.org/2000/svg" width="%d" height="%d" '
            'viewBox="0 0 %d %d">\n<rect width="%d" height="%d" fill="#ffffff"/>\n'
            '%s\n</svg>\n' % (width, height, width, height, width, height, body))


def line_plot_svg(series, xlabel, ylabel, title="", logy=False, ref_lines=(),
                  width=640, height=420):
    """Render line series to an SVG string.

    With logy, non-positive values break the polyline and infinite values
    are pinned to the top edge with a triangle marker.
    """
    xs = [float(x) for s in series for x in s.x]
    finite = [float(y) for s in series for y in s.y
              if math.isfinite(y) and (not logy or y > 0)]
    ref_vals = [r.y for r in ref_lines if math.isfinite(r.y) and (not logy or r.y > 0)]
    has_inf = any(math.isinf(y) and y > 0 for s in series for y in s.y)
    if not xs:
        raise ValueError("no points to plot")
    x_lo, x_hi = min(xs), max(xs)
    if x_lo == x_hi:
        x_lo, x_hi = x_lo - 0.5, x_hi + 0.5
    pool = finite + ref_vals
    if not pool:
        pool = [1.0]
    if logy:
        lo_exp = math.floor(math.log10(min(pool)))
        hi_exp = math.ceil(math.log10(max(pool)))
        if has_inf:
            hi_exp += 1
        if hi_exp == lo_exp:
            hi_exp += 1
        y_range = (float(lo_exp), float(hi_exp))
        y_ticks = _decade_ticks(int(lo_exp), int(hi_exp))
    else:
        lo, hi = min(pool), max(pool)
        if has_inf:
            hi = hi + 0.1 * max(hi - lo, abs(hi), 1.0)
        if lo == hi:
            lo, hi = lo - 0.5, hi + 0.5
        pad = 0.05 * (hi - lo)
        y_range = (lo - pad if lo != 0 else lo, hi + pad)
        y_ticks = _linear_ticks(*y_range)
    frame = _Frame(width, height, (x_lo, x_hi), y_range, logy)
    x_ticks = _linear_ticks(x_lo, x_hi)
    parts = _axis_parts(frame, x_ticks, y_ticks, xlabel, ylabel, title)

    for r in ref_lines:
        if not (math.isfinite(r.y) and (not logy or r.y > 0)):
            continue
        py = frame.sy(r.y)
        parts.append('<line x1="%s" y1="%s" x2="%s" y2="%s" stroke="#555555" '
                     'stroke-width="1" stroke-dasharray="6,4"/>' % (
                         _fmt(frame.px0), _fmt(py), _fmt(frame.px1), _fmt(py)))
        if r.label:
            parts.append('<text x="%s" y="%s" font-size="10" text-anchor="end" '
                         'fill="#555555">%s</text>' % (
                             _fmt(frame.px1 - 4), _fmt(py - 4), escape(r.label)))

    for idx, s in enumerate(series):
        color = _PALETTE[idx % len(_PALETTE)]
        dash = ' stroke-dasharray="7,3"' if s.dashed else ""
        run = []
        segments = []
        markers = []
        for x, y in zip(s.x, s.y):
            y = float(y)
            if math.isinf(y) and y > 0:
                if run:
                    segments.append(run)
                    run = []
                markers.append(frame.sx(float(x)))
                continue
            if not math.isfinite(y) or (logy and y <= 0):
                if run:
                    segments.append(run)
                    run = []
                continue
            run.append((frame.sx(float(x)), frame.sy(y)))
        if run:
            segments.append(run)
        for seg in segments:
            if len(seg) == 1:
                parts.append('<circle cx="%s" cy="%s" r="3" fill="%s"/>'
                             % (_fmt(seg[0][0]), _fmt(seg[0][1]), color))
                continue
            points = " ".join("%s,%s" % (_fmt(px), _fmt(py)) for px, py in seg)
            parts.append('<polyline points="%s" fill="none" stroke="%s" '
                         'stroke-width="1.8"%s/>' % (points, color, dash))
        for px in markers:
            top = frame.py1 + 6
            parts.append('<path d="M %s %s L %s %s L %s %s Z" fill="%s"/>' % (
                _fmt(px - 4), _fmt(top + 7), _fmt(px + 4), _fmt(top + 7),
                _fmt(px), _fmt(top), color))

    legend_y = frame.py1 + 14
    for idx, s in enumerate(series):
        color = _PALETTE[idx % len(_PALETTE)]
        y = legend_y + 15 * idx
        x = frame.px0 + 10
        dash = ' stroke-dasharray="7,3"' if s.dashed else ""
        parts.append('<line x1="%s" y1="%s" x2="%s" y2="%s" stroke="%s" '
                     'stroke-width="1.8"%s/>' % (_fmt(x), _fmt(y - 4),
                                                 _fmt(x + 22), _fmt(y - 4),
                                                 color, dash))
        parts.append('<text x="%s" y="%s" font-size="11" fill="#111111">%s</text>'
                     % (_fmt(x + 28), _fmt(y), escape(s.label)))
    return _svg(width, height, parts)


def bar_chart_svg(values, xlabel, ylabel, title="", width=640, height=420):
    """Render a bar chart of values indexed 0..len-1."""
    values = [float(v) for v in values]
    if not values:
        raise ValueError("no bars to plot")
    hi = max(max(values), 0.0)
    if hi == 0.0:
        hi = 1.0
    y_range = (0.0, hi * 1.05)
    frame = _Frame(width, height, (-0.5, len(values) - 0.5), y_range, False)
    y_ticks = _linear_ticks(*y_range)
    stride = max(1, len(values) // 16)
    x_ticks = list(range(0, len(values), stride))
    parts = _axis_parts(frame, x_ticks, y_ticks, xlabel, ylabel, title)
    slot = (frame.px1 - frame.px0) / len(values)
    bar_w = 0.8 * slot
    for i, v in enumerate(values):
        px = frame.sx(i) - 0.5 * bar_w
        py = frame.sy(v)
        parts.append('<rect x="%s" y="%s" width="%s" height="%s" fill="%s" '
                     'stroke="none"/>' % (_fmt(px), _fmt(py), _fmt(bar_w),
                                          _fmt(max(frame.py0 - py, 0.0)),
                                          _PALETTE[0]))
    return _svg(width, height, parts)
