"""Command-line entry point: ``uavthz <command> [options]``.

Exit codes: 0 success, 2 usage/config/data error, 3 I/O error,
4 numeric failure. No environment variables are consulted.
"""

from __future__ import annotations

import argparse
import csv
import io
import math
import sys

import numpy as np

from . import alignment, channel, config, fading, stats, trajectory
from .errors import ConfigError, NoConvergence, NoDrop, UavThzError
from .formatting import atomic_write_text, dumps_json, fmt

EXIT_OK, EXIT_USAGE, EXIT_IO, EXIT_NUMERIC = 0, 2, 3, 4


class UsageError(Exception):
    pass


# -- argument types ----------------------------------------------------------

def _axes_type(text):
    parts = text.split(",")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError("expected two axes 'name:min:max:step,name:min:max:step'")
    axes = []
    for part in parts:
        fields = part.split(":")
        if len(fields) != 4:
            raise argparse.ArgumentTypeError(f"axis {part!r} is not 'name:min:max:step'")
        try:
            axes.append(channel.AxisSpec(fields[0].strip(), *(float(f) for f in fields[1:])))
        except ValueError as exc:
            raise argparse.ArgumentTypeError(f"axis {part!r}: {exc}") from None
    if axes[0].name == axes[1].name:
        raise argparse.ArgumentTypeError("the two axes must differ")
    return tuple(axes)


def _positive_list(text):
    try:
        values = [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated number list: {text!r}") from None
    if not values:
        raise argparse.ArgumentTypeError("list must not be empty")
    if any(not (math.isfinite(v) and v > 0) for v in values):
        raise argparse.ArgumentTypeError("all values must be finite and > 0")
    return values


def _load_cfg(path):
    return config.default_config() if path is None else config.load_config(path)


def _write(path, text):
    atomic_write_text(path, text)


# -- commands ----------------------------------------------------------------

def cmd_simulate(args):
    cfg = _load_cfg(args.config)
    rng = np.random.default_rng(args.seed)
    log = trajectory.simulate_hover(cfg.uav, cfg.jitter, rng)
    mean = channel.evaluate_positions(cfg.station, log.positions, log.pitch, log.yaw,
                                      cfg.tx, cfg.rx, cfg.params, cfg.mode, cfg.nominal_rx)
    power = mean - fading.weibull_sample(cfg.fading, rng, len(log))
    _write(args.out, trajectory.format_flight_log(log.with_power(power)))
    return EXIT_OK


def cmd_power_map(args):
    cfg = _load_cfg(args.config)
    mode = cfg.mode if args.mode is None else channel.ModelMode(args.mode)
    rng = np.random.default_rng(args.seed) if args.fading else None
    pmap = channel.power_map(cfg.station, cfg.uav, args.axes, cfg.tx, cfg.rx, cfg.params,
                             mode, cfg.fading if args.fading else None, rng, cfg.nominal_rx)
    fmt_name = args.format or ("json" if str(args.out).endswith(".json") else "csv")
    _write(args.out, dumps_json(pmap.to_dict()) if fmt_name == "json" else pmap.to_csv())
    return EXIT_OK


def _read_column(path, column):
    with open(path, encoding="utf-8", newline="") as fh:
        text = fh.read()
    reader = csv.DictReader(io.StringIO(text))
    if reader.fieldnames is None or column not in [f.strip() for f in reader.fieldnames]:
        raise UsageError(f"column {column!r} not found in {path}")
    values = []
    for lineno, row in enumerate(reader, start=2):
        cell = (row.get(column) or "").strip()
        if cell == "":
            continue
        try:
            values.append(float(cell))
        except ValueError:
            raise UsageError(f"{path}:{lineno}: bad number {cell!r}") from None
    if not values:
        raise UsageError(f"column {column!r} in {path} has no values")
    return np.array(values), text


def cmd_fit_fading(args):
    values, text = _read_column(args.input, args.column)
    if args.config is not None:
        cfg = config.load_config(args.config)
        log = trajectory.parse_flight_log(text, str(args.input))
        pred = trajectory.predict_over_log(log, cfg.station, cfg.tx, cfg.rx, cfg.params,
                                           cfg.mode, cfg.nominal_rx)
        # fading is a loss: predicted mean minus measured
        values = -pred.residual[np.isfinite(pred.residual)]
        if values.size == 0:
            raise UsageError("log has no measured power")
    if args.model == "auto":
        report = fading.classify_fading(values)
    else:
        report = fading.fit_fading(values, args.model)
    doc = report.to_dict()
    doc["input"] = {"column": args.column, "fading_loss": args.config is not None}
    _write(args.out, dumps_json(doc))
    return EXIT_OK


def cmd_correlate(args):
    log = trajectory.load_flight_log(args.input)
    nominal, azimuth = None, 0.0
    if args.config is not None:
        cfg = config.load_config(args.config)
        nominal, azimuth = cfg.uav, cfg.station.boresight_azimuth
    report = stats.correlation_matrix(log, nominal, azimuth, args.movement)
    _write(args.out, dumps_json(report.to_dict()))
    return EXIT_OK


def cmd_align_range(args):
    cfg = _load_cfg(args.config)
    rows = alignment.sweep_3db(args.dist_list, args.hpbw_list,
                               alignment.PatternConfig(args.pattern), cfg.params,
                               cfg.station, cfg.tx, cfg.rx)
    _write(args.out, alignment.sweep_to_csv(rows))
    return EXIT_OK


def cmd_predict(args):
    cfg = _load_cfg(args.config)
    log = trajectory.load_flight_log(args.log)
    rng = None if args.seed is None else np.random.default_rng(args.seed)
    pred = trajectory.predict_over_log(log, cfg.station, cfg.tx, cfg.rx, cfg.params, cfg.mode,
                                       cfg.nominal_rx, cfg.fading if rng else None, rng)
    _write(args.out, pred.to_csv())
    s = pred.summary()
    print(f"residual n={s['n']} mean={fmt(s['mean']) or 'nan'} std={fmt(s['std']) or 'nan'} "
          f"max_abs={fmt(s['max_abs']) or 'nan'}")
    return EXIT_OK


# -- parser ------------------------------------------------------------------

def build_parser():
    parser = argparse.ArgumentParser(
        prog="uavthz",
        description="Ground-to-UAV 140 GHz link simulation and analysis.",
    )
    parser.add_argument("--print-config", action="store_true",
                        help="print the default scenario config and exit")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")

    def add(name, func, help_text):
        p = sub.add_parser(name, help=help_text, description=help_text)
        p.set_defaults(func=func)
        return p

    def add_config(p):
        p.add_argument("--config", help="scenario file (key = value); defaults if omitted")
        p.add_argument("--print-config", action="store_true",
                       help="print the resolved scenario config and exit")

    p = add("simulate", cmd_simulate, "synthesise a hover flight log with a sampled SNR trace")
    add_config(p)
    p.add_argument("--seed", type=int, default=0, help="generator seed (default 0)")
    p.add_argument("--out", required=True, help="output flight-log CSV")

    p = add("power-map", cmd_power_map, "evaluate the link model on a 2-D offset grid")
    add_config(p)
    p.add_argument("--mode", choices=["full", "calibrated"],
                   help="orientation handling (default: config 'mode')")
    p.add_argument("--axes", type=_axes_type,
                   default=_axes_type("b:-0.3:0.3:0.02,height:-0.3:0.3:0.02"),
                   help="two axes 'name:min:max:step' joined by a comma; names a, b, height "
                        "(default b:-0.3:0.3:0.02,height:-0.3:0.3:0.02)")
    p.add_argument("--fading", action="store_true", help="subtract one fading draw per cell")
    p.add_argument("--seed", type=int, default=0, help="generator seed for --fading")
    p.add_argument("--format", choices=["csv", "json"],
                   help="output format (default: json if --out ends in .json, else csv)")
    p.add_argument("--out", required=True, help="output file")

    p = add("fit-fading", cmd_fit_fading, "fit Weibull/Rician fading to a CSV column")
    p.add_argument("--input", required=True, help="CSV file with a header row")
    p.add_argument("--column", default="power_dbm", help="column to fit (default power_dbm)")
    p.add_argument("--model", choices=["auto", "weibull", "rician"], default="auto",
                   help="family to fit; auto picks the smaller KS statistic")
    p.add_argument("--config", help="scenario file; when given the input must be a flight log "
                                    "and the fitted quantity is the fading loss "
                                    "(model mean minus measured power)")
    p.add_argument("--out", required=True, help="output FitReport JSON")

    p = add("correlate", cmd_correlate, "Pearson correlation report over a flight log")
    p.add_argument("--input", required=True, help="flight-log CSV with measured power")
    p.add_argument("--config", help="scenario file giving the nominal hover pose and bearing "
                                    "(default: log mean pose, bearing 0)")
    p.add_argument("--movement", choices=["offset", "step"], default="offset",
                   help="movement columns as offsets from nominal or per-step increments")
    p.add_argument("--out", required=True, help="output CorrelationReport JSON")

    p = add("align-range", cmd_align_range, "3-dB alignment diameter sweep")
    add_config(p)
    p.add_argument("--dist-list", type=_positive_list, default=[10.0, 50.0, 100.0, 200.0],
                   help="comma-separated link distances in m (default 10,50,100,200)")
    p.add_argument("--hpbw-list", type=_positive_list,
                   default=[float(v) for v in range(1, 11)],
                   help="comma-separated HPBWs in degrees (default 1..10)")
    p.add_argument("--pattern", choices=["tx", "txrx"], default="tx",
                   help="patterns included in the 3-dB drop")
    p.add_argument("--out", required=True, help="output sweep CSV")

    p = add("predict", cmd_predict, "model prediction and residuals along a flight log")
    add_config(p)
    p.add_argument("--log", required=True, help="flight-log CSV")
    p.add_argument("--seed", type=int, help="subtract seeded fading draws from the prediction")
    p.add_argument("--out", required=True, help="output prediction CSV")
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command is None:
            if args.print_config:
                sys.stdout.write(config.format_config())
                return EXIT_OK
            parser.print_usage(sys.stderr)
            return EXIT_USAGE
        if getattr(args, "print_config", False):
            sys.stdout.write(config.format_config(_load_cfg(getattr(args, "config", None))))
            return EXIT_OK
        return args.func(args)
    except (NoConvergence, NoDrop) as exc:
        print(f"uavthz: numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (ConfigError, UsageError, UavThzError, ValueError) as exc:
        print(f"uavthz: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"uavthz: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
