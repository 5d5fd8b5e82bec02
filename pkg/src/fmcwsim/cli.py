"""Config-driven command line front end.

Subcommands
-----------
generate     write a synthetic highway scenario trace (CSV)
interferers  interferer-count distribution and count-vs-distance curves
evaluate     failure probability and mean time between failures per scheme
sweep        evaluate across one swept parameter axis
validate     analytic-vs-simulation check suite

Exit codes: 0 success, 1 validation error, 2 I/O error, 3 oracle check
failure.  All outputs are flat CSV files plus self-contained SVG plots,
and rerunning any command with the same config and seed reproduces them
byte for byte.

Config file schema (INI; every section and key is optional; command line
flags override file values)::

    [system]
    preset = front                ; front | corner: fills timing, link
                                  ; budget, layout and compass defaults

    [scenario]
    trace = trace.csv             ; read this trace instead of generating
    lanes_per_direction = 3
    lane_width_m = 3.5
    length_m = 8000
    density_veh_km = 150          ; total over all lanes
    min_headway_m = 6.0
    vehicle_length_m = 4.5
    vehicle_width_m = 1.8
    n_snapshots = 1
    time_step_s = 1.0
    seed = 0

    [layout]
    fov_deg = 30                  ; field-of-view override for the preset

    [timing]                      ; any chirp timing field by name
    b_total_hz = 3e9
    k_ch = 100

    [link_budget]                 ; any link budget field by name, plus
    d_max_m = 2000                ; explicit interferer cutoff distance

    [compass]
    modes = off, effective        ; off | effective | worst_case_same_sector
    n_sectors = 2
    sector_offset_deg = 90
    corner_pairing = front_vs_back

    [interferers]
    d_grid = 100, 200, 400        ; count-curve distances (default: 20
                                  ; points up to the link budget cutoff)

    [evaluate]
    schemes = baseline, frame_hopping, chirp_hopping

    [sweep]
    axis = bandwidth              ; bandwidth | density | kch |
                                  ; duty_cycle | max_distance_grid
    values = 1.5e9, 2e9, 3e9
    schemes = frame_hopping, chirp_hopping
"""

import argparse
import configparser
import csv
import dataclasses
import enum
import os
import re
import sys
from dataclasses import dataclass, replace

import numpy as np

from . import presets
from .geometry import LinkBudgetSpec, max_equivalent_distance
from .interferers import (CompassConfig, CompassMode, CornerPairing,
                          distance_count_curves, interferer_distribution)
from .models import (RadarTimingSpec, Scheme, failure_prob_baseline,
                     failure_prob_chirp_hopping, failure_prob_frame_hopping,
                     failure_prob_with_compass)
from .oracle import run_validation
from .scenario import (HighwayConfig, corner_layout, front_layout,
                       generate_highway, load_snapshots, save_snapshots)
from .svgplot import RefLine, Series, bar_chart_svg, line_plot_svg


class SweepAxis(enum.Enum):
    BANDWIDTH = "bandwidth"
    DENSITY = "density"
    KCH = "kch"
    DUTY_CYCLE = "duty_cycle"
    MAX_DISTANCE_GRID = "max_distance_grid"


_SCHEME_FN = {
    Scheme.BASELINE: failure_prob_baseline,
    Scheme.FRAME_HOPPING: failure_prob_frame_hopping,
    Scheme.CHIRP_HOPPING: failure_prob_chirp_hopping,
}

_INT_TIMING_FIELDS = {"n_chirps", "k_ch", "m_consecutive"}


@dataclass
class SweepConfig:
    """Fully resolved run description shared by all subcommands."""
    highway: HighwayConfig
    trace_path: str
    layout: object
    timing: RadarTimingSpec
    link_budget: LinkBudgetSpec
    compass: CompassConfig
    compass_modes: tuple
    schemes: tuple
    sweep_axis: object
    axis_values: tuple
    d_max_m: float
    d_grid: tuple
    output_dir: str
    threads: int


@dataclass(frozen=True)
class ResultRow:
    axis_value: float
    scheme: Scheme
    compass_mode: CompassMode
    p_fail: float
    t_fail_s: float
    t_rf_s: float
    p_f: float
    degenerate_hopping: bool


def _split_list(text):
    return [t for t in re.split(r"[\s,]+", text.strip()) if t]


def _get(parser, section, key, default=None, conv=str):
    if parser.has_option(section, key):
        return conv(parser.get(section, key))
    return default


def _enum_by_value(enum_cls, text, what):
    for member in enum_cls:
        if member.value == text:
            return member
    valid = ", ".join(m.value for m in enum_cls)
    raise ValueError("unknown %s %r (expected one of: %s)" % (what, text, valid))


def _override_dataclass(obj, parser, section, int_fields=()):
    updates = {}
    for f in dataclasses.fields(obj):
        if parser.has_option(section, f.name):
            raw = parser.get(section, f.name)
            updates[f.name] = int(float(raw)) if f.name in int_fields else float(raw)
    return replace(obj, **updates) if updates else obj


def build_config(args, schemes_section):
    """Resolve the layered configuration: preset, then file, then flags."""
    parser = configparser.ConfigParser(inline_comment_prefixes=(";", "#"))
    if getattr(args, "config", None):
        if not parser.read(args.config):
            raise OSError("cannot read config file %r" % args.config)

    preset = presets.get_preset(_get(parser, "system", "preset", "front").strip())

    fov = _get(parser, "layout", "fov_deg", None, float)
    if fov is None:
        layout = preset.layout
    elif preset.name == "front":
        layout = front_layout(fov)
    else:
        layout = corner_layout(fov)

    timing = _override_dataclass(preset.timing, parser, "timing",
                                 _INT_TIMING_FIELDS)
    budget = _override_dataclass(preset.budget, parser, "link_budget")
    d_max = _get(parser, "link_budget", "d_max_m", None, float)

    trace = _get(parser, "scenario", "trace", None)
    highway = HighwayConfig(
        lanes_per_direction=_get(parser, "scenario", "lanes_per_direction",
                                 3, lambda v: int(float(v))),
        lane_width_m=_get(parser, "scenario", "lane_width_m", 3.5, float),
        length_m=_get(parser, "scenario", "length_m", 8000.0, float),
        density_veh_km=_get(parser, "scenario", "density_veh_km", 150.0, float),
        min_headway_m=_get(parser, "scenario", "min_headway_m", 6.0, float),
        vehicle_length_m=_get(parser, "scenario", "vehicle_length_m", 4.5, float),
        vehicle_width_m=_get(parser, "scenario", "vehicle_width_m", 1.8, float),
        n_snapshots=_get(parser, "scenario", "n_snapshots", 1,
                         lambda v: int(float(v))),
        time_step_s=_get(parser, "scenario", "time_step_s", 1.0, float),
        seed=_get(parser, "scenario", "seed", 0, lambda v: int(float(v))),
    )
    if getattr(args, "seed", None) is not None:
        highway = replace(highway, seed=args.seed)

    compass = CompassConfig(
        n_sectors=_get(parser, "compass", "n_sectors",
                       preset.compass.n_sectors, lambda v: int(float(v))),
        sector_offset_deg=_get(parser, "compass", "sector_offset_deg",
                               preset.compass.sector_offset_deg, float),
        mode=CompassMode.OFF,
        corner_pairing=_get(
            parser, "compass", "corner_pairing", preset.compass.corner_pairing,
            lambda v: None if v.strip() in ("", "none")
            else _enum_by_value(CornerPairing, v.strip(), "corner pairing")),
    )
    mode_names = _get(parser, "compass", "modes", None, _split_list) or ["off"]
    modes = tuple(_enum_by_value(CompassMode, m, "compass mode")
                  for m in mode_names)

    scheme_names = _get(parser, schemes_section, "schemes", None, _split_list)
    if scheme_names is None:
        schemes = (Scheme.BASELINE, Scheme.FRAME_HOPPING, Scheme.CHIRP_HOPPING)
    else:
        schemes = tuple(_enum_by_value(Scheme, s, "scheme") for s in scheme_names)

    axis_name = _get(parser, "sweep", "axis", None)
    axis = _enum_by_value(SweepAxis, axis_name.strip(), "sweep axis") \
        if axis_name else None
    values = tuple(float(v)
                   for v in _get(parser, "sweep", "values", None, _split_list)
                   or ())

    d_grid = _get(parser, "interferers", "d_grid", None,
                  lambda v: tuple(float(t) for t in _split_list(v)))

    out_dir = getattr(args, "out", ".") or "."
    return SweepConfig(highway=highway, trace_path=trace, layout=layout,
                       timing=timing, link_budget=budget, compass=compass,
                       compass_modes=modes, schemes=schemes, sweep_axis=axis,
                       axis_values=values, d_max_m=d_max, d_grid=d_grid,
                       output_dir=out_dir,
                       threads=max(1, getattr(args, "threads", 1) or 1))


def _fmt_cell(v):
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return repr(v)
    if isinstance(v, enum.Enum):
        return v.value
    return str(v)


def _write_csv(path, header, rows):
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        for row in rows:
            writer.writerow([_fmt_cell(v) for v in row])


def _write_text(path, text):
    with open(path, "w") as fh:
        fh.write(text)


def _load_snaps(cfg):
    if cfg.trace_path:
        return load_snapshots(cfg.trace_path)
    return generate_highway(cfg.highway)


def _resolved_d_max(cfg):
    if cfg.d_max_m is not None:
        return cfg.d_max_m
    return max_equivalent_distance(cfg.link_budget)


def cmd_generate(cfg):
    snaps = generate_highway(cfg.highway)
    path = os.path.join(cfg.output_dir, "scenario.csv")
    save_snapshots(snaps, path)
    print("wrote %s: %d snapshots, %d vehicles each"
          % (path, len(snaps), len(snaps[0].vehicles) if snaps else 0))
    return 0


def _tail_sums(probs, size):
    padded = np.zeros(size)
    padded[:len(probs)] = probs
    return np.cumsum(padded[::-1])[::-1]


def cmd_interferers(cfg):
    snaps = _load_snaps(cfg)
    d_max = _resolved_d_max(cfg)
    rcs = cfg.link_budget.rcs_m2
    out = cfg.output_dir

    raw = interferer_distribution(snaps, cfg.layout, d_max, rcs_m2=rcs,
                                  threads=cfg.threads)
    _write_csv(os.path.join(out, "interferer_distribution.csv"),
               ["n", "probability"],
               [(n, float(p)) for n, p in enumerate(raw.probabilities)])
    _write_text(os.path.join(out, "interferer_distribution.svg"),
                bar_chart_svg(raw.probabilities, "potential interferers n",
                              "probability",
                              title="interferer count distribution"))

    if cfg.d_grid:
        d_grid = np.asarray(cfg.d_grid, dtype=float)
    else:
        d_grid = np.linspace(d_max / 20.0, d_max, 20)
    mean_all, mean_direct = distance_count_curves(
        snaps, cfg.layout, d_grid, rcs_m2=rcs, threads=cfg.threads)
    curve_header = ["d_max_m", "mean_count_all", "mean_count_direct"]
    curve_cols = [d_grid, mean_all, mean_direct]
    series = [Series("all paths", list(d_grid), list(mean_all)),
              Series("direct only", list(d_grid), list(mean_direct))]

    if CompassMode.EFFECTIVE in cfg.compass_modes:
        comp = replace(cfg.compass, mode=CompassMode.EFFECTIVE)
        eff = interferer_distribution(snaps, cfg.layout, d_max, rcs_m2=rcs,
                                      compass=comp, threads=cfg.threads)
        _write_csv(os.path.join(out, "interferer_distribution_effective.csv"),
                   ["n", "probability"],
                   [(n, float(p)) for n, p in enumerate(eff.probabilities)])
        _write_text(os.path.join(out, "interferer_distribution_effective.svg"),
                    bar_chart_svg(eff.probabilities, "potential interferers n",
                                  "probability",
                                  title="interferer count distribution "
                                        "(compass effective)"))
        eff_all, eff_direct = distance_count_curves(
            snaps, cfg.layout, d_grid, rcs_m2=rcs, compass=comp,
            threads=cfg.threads)
        curve_header += ["mean_count_all_effective",
                         "mean_count_direct_effective"]
        curve_cols += [eff_all, eff_direct]
        series.append(Series("all paths, compass", list(d_grid),
                             list(eff_all), dashed=True))
        series.append(Series("direct only, compass", list(d_grid),
                             list(eff_direct), dashed=True))

        size = max(len(raw.probabilities), len(eff.probabilities))
        t_raw = _tail_sums(raw.probabilities, size)
        t_eff = _tail_sums(eff.probabilities, size)
        bad = np.nonzero(t_eff > t_raw + 1e-12)[0]
        if bad.size:
            n = int(bad[0])
            print("compass effective tail dominance: FAIL at n=%d "
                  "(%.6g > %.6g)" % (n, t_eff[n], t_raw[n]))
        else:
            print("compass effective tail dominance: PASS "
                  "(every tail mass <= no-compass tail mass)")

    _write_csv(os.path.join(out, "interferer_counts_vs_distance.csv"),
               curve_header,
               [tuple(float(col[i]) for col in curve_cols)
                for i in range(len(d_grid))])
    _write_text(os.path.join(out, "interferer_counts_vs_distance.svg"),
                line_plot_svg(series, "maximum equivalent distance (m)",
                              "mean potential interferers",
                              title="interferer count vs distance"))
    print("interferer distribution over %d victim samples, mean %.4g "
          "(d_max %.6g m)" % (raw.sample_count, raw.mean(), d_max))
    return 0


def _rows_for(cfg, timing, dists, axis_value):
    rows = []
    for mode in cfg.compass_modes:
        for scheme in cfg.schemes:
            if mode is CompassMode.OFF:
                res = _SCHEME_FN[scheme](dists[mode], timing)
            elif scheme is Scheme.BASELINE:
                # compass sectoring partitions the hopping band; the fixed
                # frequency scheme has no band to partition
                continue
            else:
                res = failure_prob_with_compass(
                    dists[mode], timing, replace(cfg.compass, mode=mode), scheme)
            rows.append(ResultRow(axis_value=axis_value, scheme=scheme,
                                  compass_mode=mode, p_fail=res.p_fail,
                                  t_fail_s=res.t_fail_s, t_rf_s=res.t_rf_s,
                                  p_f=res.p_f,
                                  degenerate_hopping=res.degenerate_hopping))
    return rows


def _distributions(cfg, snaps, d_max):
    """One interferer distribution per requested compass mode.

    Off and worst-case share the unfiltered distribution; effective
    filters attackers to the victim's channel.
    """
    rcs = cfg.link_budget.rcs_m2
    dists = {}
    raw = None
    for mode in cfg.compass_modes:
        if mode is CompassMode.EFFECTIVE:
            comp = replace(cfg.compass, mode=mode)
            dists[mode] = interferer_distribution(
                snaps, cfg.layout, d_max, rcs_m2=rcs, compass=comp,
                threads=cfg.threads)
        else:
            if raw is None:
                raw = interferer_distribution(
                    snaps, cfg.layout, d_max, rcs_m2=rcs, threads=cfg.threads)
            dists[mode] = raw
    return dists


_RESULT_FIELDS = ["scheme", "compass_mode", "p_fail", "t_fail_s", "t_rf_s",
                  "p_f", "degenerate_hopping", "week_reference_s",
                  "year_reference_s"]


def _result_cells(row):
    return [row.scheme, row.compass_mode, row.p_fail, row.t_fail_s,
            row.t_rf_s, row.p_f, row.degenerate_hopping,
            presets.USE_WEEK_S, presets.USE_YEAR_S]


def _print_rows(rows):
    for r in rows:
        print("%s / %s: p_fail=%.6g t_fail=%s s%s"
              % (r.scheme.value, r.compass_mode.value, r.p_fail,
                 repr(r.t_fail_s),
                 " (degenerate hopping)" if r.degenerate_hopping else ""))


def _ref_lines():
    return (RefLine(presets.USE_WEEK_S, "1 week of driving"),
            RefLine(presets.USE_YEAR_S, "1 year of driving"))


def cmd_evaluate(cfg):
    snaps = _load_snaps(cfg)
    d_max = _resolved_d_max(cfg)
    dists = _distributions(cfg, snaps, d_max)
    rows = _rows_for(cfg, cfg.timing, dists, axis_value=None)

    out = cfg.output_dir
    _write_csv(os.path.join(out, "failure_results.csv"), _RESULT_FIELDS,
               [_result_cells(r) for r in rows])

    scheme_index = {s: i for i, s in enumerate(cfg.schemes)}
    series = []
    for mode in cfg.compass_modes:
        mode_rows = [r for r in rows if r.compass_mode is mode]
        if mode_rows:
            series.append(Series(mode.value,
                                 [scheme_index[r.scheme] for r in mode_rows],
                                 [r.t_fail_s for r in mode_rows]))
    xlabel = "scheme (%s)" % ", ".join("%d=%s" % (i, s.value)
                                       for i, s in enumerate(cfg.schemes))
    _write_text(os.path.join(out, "failure_results.svg"),
                line_plot_svg(series, xlabel, "mean time between failures (s)",
                              title="failure times by scheme", logy=True,
                              ref_lines=_ref_lines()))
    _print_rows(rows)
    return 0


def _timing_for(timing, axis, value):
    if axis is SweepAxis.BANDWIDTH:
        return replace(timing, b_total_hz=value)
    if axis is SweepAxis.KCH:
        return replace(timing, k_ch=int(round(value)))
    if axis is SweepAxis.DUTY_CYCLE:
        return replace(timing, duty_cycle=value)
    return timing


def cmd_sweep(cfg):
    axis = cfg.sweep_axis
    if axis is None:
        raise ValueError("sweep requires [sweep] axis in the config")
    values = cfg.axis_values
    if not values:
        raise ValueError("sweep requires nonempty [sweep] values")
    if any(b <= a for a, b in zip(values, values[1:])):
        raise ValueError("sweep values must be strictly increasing")
    if axis is SweepAxis.DENSITY and cfg.trace_path:
        raise ValueError("density sweep needs a generated scenario, "
                         "not a recorded trace")

    rows = []
    if axis in (SweepAxis.BANDWIDTH, SweepAxis.KCH, SweepAxis.DUTY_CYCLE):
        # geometry never changes along these axes: one distribution pass
        snaps = _load_snaps(cfg)
        dists = _distributions(cfg, snaps, _resolved_d_max(cfg))
        for v in values:
            rows += _rows_for(cfg, _timing_for(cfg.timing, axis, v), dists, v)
    elif axis is SweepAxis.DENSITY:
        for v in values:
            snaps = generate_highway(replace(cfg.highway, density_veh_km=v))
            dists = _distributions(cfg, snaps, _resolved_d_max(cfg))
            rows += _rows_for(cfg, cfg.timing, dists, v)
    else:
        snaps = _load_snaps(cfg)
        for v in values:
            if v <= 0:
                raise ValueError("max distance grid values must be positive")
            dists = _distributions(cfg, snaps, v)
            rows += _rows_for(cfg, cfg.timing, dists, v)

    out = cfg.output_dir
    name = "sweep_%s" % axis.value
    _write_csv(os.path.join(out, name + ".csv"),
               ["axis", "axis_value"] + _RESULT_FIELDS,
               [[axis, row.axis_value] + _result_cells(row) for row in rows])

    series = []
    for mode in cfg.compass_modes:
        for scheme in cfg.schemes:
            pts = [r for r in rows
                   if r.scheme is scheme and r.compass_mode is mode]
            if pts:
                series.append(Series(
                    "%s / %s" % (scheme.value, mode.value),
                    [r.axis_value for r in pts], [r.t_fail_s for r in pts],
                    dashed=(mode is not CompassMode.OFF)))
    _write_text(os.path.join(out, name + ".svg"),
                line_plot_svg(series, axis.value,
                              "mean time between failures (s)",
                              title="failure time sweep: %s" % axis.value,
                              logy=True, ref_lines=_ref_lines()))
    print("wrote %s.csv with %d rows over %d axis values"
          % (os.path.join(out, name), len(rows), len(values)))
    return 0


def cmd_validate(args):
    rows = run_validation(trials=args.trials, seed=args.seed
                          if args.seed is not None else 1)
    lines = ["%-4s %-38s %14s %14s %10s  %s"
             % ("", "check", "expected", "estimate", "tolerance", "note")]
    for r in rows:
        lines.append("%-4s %-38s %14.6g %14.6g %10.3g  %s"
                     % ("PASS" if r.passed else "FAIL", r.name, r.expected,
                        r.estimate, r.tolerance, r.note))
    n_fail = sum(1 for r in rows if not r.passed)
    lines.append("%d checks, %d failed" % (len(rows), n_fail))
    report = "\n".join(lines) + "\n"
    out_dir = getattr(args, "out", ".") or "."
    _write_text(os.path.join(out_dir, "validation_report.txt"), report)
    sys.stdout.write(report)
    return 0 if n_fail == 0 else 3


def _parse_args(argv):
    parser = argparse.ArgumentParser(
        prog="fmcwsim",
        description="FMCW radar mutual interference simulator and "
                    "failure-rate models")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--config", help="INI config file (see module docs)")
        sp.add_argument("--seed", type=int, default=None,
                        help="override the scenario seed")
        sp.add_argument("--out", default=".", help="output directory")
        sp.add_argument("--threads", type=int, default=1,
                        help="worker threads for geometry passes")

    common(sub.add_parser("generate", help="write a synthetic scenario CSV"))
    common(sub.add_parser("interferers",
                          help="interferer distribution and count curves"))
    common(sub.add_parser("evaluate",
                          help="failure probability and time per scheme"))
    common(sub.add_parser("sweep", help="evaluate across a parameter axis"))
    vp = sub.add_parser("validate",
                        help="analytic-vs-simulation check suite")
    common(vp)
    vp.add_argument("--trials", type=int, default=200_000,
                    help="Monte Carlo trials per check")
    return parser.parse_args(argv)


def main(argv=None):
    args = _parse_args(argv)
    try:
        os.makedirs(args.out or ".", exist_ok=True)
        if args.command == "validate":
            return cmd_validate(args)
        cfg = build_config(args, schemes_section=args.command
                           if args.command in ("evaluate", "sweep") else "evaluate")
        if args.command == "generate":
            return cmd_generate(cfg)
        if args.command == "interferers":
            return cmd_interferers(cfg)
        if args.command == "evaluate":
            return cmd_evaluate(cfg)
        if args.command == "sweep":
            return cmd_sweep(cfg)
        raise ValueError("unknown command %r" % args.command)
    except OSError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2
    except ValueError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
