"""Command-line front end.

    thermozeno survival  --config run.cfg --out curve.csv
    thermozeno bound     --config run.cfg --compare --format json
    thermozeno sweep     --config run.cfg --param temperature --values 0.1,1,50,250
    thermozeno multimode --config modes.cfg
    thermozeno figure fig2a --out fig2a.csv

Flags override config-file values.  Diagnostics go to stderr; on failure a
one-line JSON error object is printed there and the exit status is 2.
"""

import argparse
import json
import logging
import sys

from . import bounds, config, thermal
from .errors import ConfigError, ThermoZenoError
from .model import DETUNED, RESONANT, ModelParams, validate
from .multimode import thermal_survival
from .presets import PRESETS
from .report import curves_table, render_csv, render_json, write_text

log = logging.getLogger("thermozeno")

DEFAULT_T_MAX = 20.0
DEFAULT_EPS_LIST = (0.05, 0.1, 0.3, 0.5)
SWEEP_PARAMS = ("temperature", "delta", "omega_a", "omega_b", "g12", "g23")


def _float_list(text):
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated list of numbers: {text!r}")


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="flat key=value parameter file")
    common.add_argument("--out", help="output path (default: stdout)")
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--workers", type=int, help="parallel threads (results do not depend on it)")
    common.add_argument("--tail-mass", dest="tail_mass", type=float)
    common.add_argument("--eps", dest="epsilon", type=float)
    common.add_argument("--t-max", dest="t_max", type=float)
    common.add_argument("--points", type=int)
    for key in ("omega_a", "omega_b", "g12", "g23", "delta", "temperature",
                "omega_1", "omega_2", "omega_3"):
        common.add_argument("--" + key.replace("_", "-"), dest=key, type=float)
    common.add_argument("--mode", choices=(RESONANT, DETUNED))
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="thermozeno", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("survival", parents=[common], help="thermal survival curve P1(t)")
    p = sub.add_parser("bound", parents=[common], help="analytic lower bounds")
    p.add_argument("--compare", action="store_true", help="compare against the exact curve")
    p = sub.add_parser("sweep", parents=[common], help="min/mean/tail P1 over a parameter grid")
    p.add_argument("--param", choices=SWEEP_PARAMS, required=True)
    p.add_argument("--values", type=_float_list, required=True)
    p = sub.add_parser("multimode", parents=[common], help="p x q multimode survival curve")
    p.add_argument("--allow-general", action="store_true", help="permit p > 1 thermal averaging")
    p = sub.add_parser("figure", parents=[common], help="reproduce a figure preset as data")
    p.add_argument("preset", choices=sorted(PRESETS))
    return parser


def merged_config(args):
    cfg = config.load_config(args.config) if args.config else {}
    for key in config.KNOWN:
        value = getattr(args, key, None)
        if value is not None:
            cfg[key] = value
    return cfg


def _times(cfg, default_t_max=DEFAULT_T_MAX):
    return thermal.uniform_times(cfg.get("t_max", default_t_max),
                                 cfg.get("points", thermal.DEFAULT_POINTS))


def _curve_meta(curve):
    return {k: curve.metadata[k] for k in ("params", "cutoff_a", "cutoff_b", "discarded_mass")}


def _diagnose(label, curve):
    md = curve.metadata
    cut = md.get("cutoffs", [md.get("cutoff_a"), md.get("cutoff_b")])
    print(f"{label}: cutoffs={cut} discarded_mass={md['discarded_mass']:.3e}", file=sys.stderr)


def _emit_curves(args, times, columns, metadata):
    if args.format == "csv":
        header, rows = curves_table(times, columns)
        text = render_csv(header, rows, metadata)
    else:
        series = [{"label": k, "t": times, "p1": v} for k, v in columns.items()]
        text = render_json(metadata, series)
    write_text(args.out, text)


def cmd_survival(args, cfg):
    params = config.params_from_config(cfg)
    tol = config.tolerances_from_config(cfg)
    curve = thermal.survival_curve(params, _times(cfg), tol, args.workers)
    _diagnose("survival", curve)
    _emit_curves(args, curve.times, {"p1": curve.p1}, curve.metadata)


def cmd_figure(args, cfg):
    preset = PRESETS[args.preset]
    tol = config.tolerances_from_config(cfg)
    times = thermal.uniform_times(cfg.get("t_max", preset.t_max), cfg.get("points", preset.points))
    columns, curves_meta = {}, []
    for value in preset.values:
        curve = thermal.survival_curve(preset.params(value), times, tol, args.workers)
        label = preset.label(value)
        _diagnose(label, curve)
        columns[label] = curve.p1
        curves_meta.append({"label": label, **_curve_meta(curve)})
    meta = {"preset": preset.name, "description": preset.description,
            "tolerances": tol.as_dict(), "curves": curves_meta}
    _emit_curves(args, times, columns, meta)


def cmd_bound(args, cfg):
    params = config.params_from_config(cfg)
    tol = config.tolerances_from_config(cfg)
    if "epsilon" in cfg:
        reports = [bounds.bound_report(params, cfg["epsilon"])]
    else:
        reports = [bounds.best_bound(params)] + [bounds.bound_report(params, e) for e in DEFAULT_EPS_LIST]
    for r in reports:
        flag = "" if r.high_temperature else "  [not in high-T regime]"
        print(f"eps={r.epsilon:.6g} finite_T={r.finite_T_bound:.6g} high_T={r.high_T_bound:.6g} "
              f"eta={r.eta:.6g} validity=({r.validity[0]:.3g}, {r.validity[1]:.3g}){flag}",
              file=sys.stderr)

    rows = [r.as_dict() for r in reports]
    meta = {"params": params.as_dict(), "tolerances": tol.as_dict()}
    if args.compare:
        curve = thermal.survival_curve(params, _times(cfg), tol, args.workers)
        _diagnose("exact", curve)
        min_p1 = curve.minimum()
        meta.update(_curve_meta(curve))
        meta["min_p1"] = min_p1
        for row in rows:
            row["min_p1"] = min_p1
            row["dominated"] = row["finite_T_bound"] <= min_p1
    if args.format == "json":
        write_text(args.out, render_json(meta, rows))
    else:
        header = ["epsilon", "chi", "alpha_eps", "beta_eps", "eta", "finite_T_bound",
                  "high_T_bound", "validity_1", "validity_2"]
        if args.compare:
            header += ["min_p1", "dominated"]
        table = []
        for row in rows:
            v1, v2 = row["validity"]
            rec = [row[h] for h in header[:7]] + [v1, v2]
            if args.compare:
                rec += [row["min_p1"], int(row["dominated"])]
            table.append(rec)
        write_text(args.out, render_csv(header, table, meta))


def cmd_sweep(args, cfg):
    if not args.values:
        raise ConfigError("empty sweep grid")
    tol = config.tolerances_from_config(cfg)
    times = _times(cfg)
    base = {k: cfg[k] for k in ("omega_a", "omega_b", "g12", "g23", "delta", "temperature")
            if k in cfg}
    rows, curves_meta = [], []
    for value in args.values:
        kw = dict(base, **{args.param: value})
        config.require_keys(kw, "omega_a", "omega_b", "g12", "g23")
        mode = DETUNED if kw.get("delta", 0.0) != 0.0 else RESONANT
        params = validate(ModelParams.from_frequencies(**kw), mode)
        curve = thermal.survival_curve(params, times, tol, args.workers)
        _diagnose(f"{args.param}={value!r}", curve)
        rows.append([args.param, value, curve.minimum(), float(curve.p1.mean()), curve.tail_mean(),
                     curve.metadata["cutoff_a"], curve.metadata["cutoff_b"],
                     curve.metadata["discarded_mass"]])
        curves_meta.append(_curve_meta(curve))
    header = ["param", "value", "min_p1", "mean_p1", "tail_mean_p1", "cutoff_a", "cutoff_b",
              "discarded_mass"]
    meta = {"sweep": args.param, "tolerances": tol.as_dict(), "curves": curves_meta}
    if args.format == "json":
        write_text(args.out, render_json(meta, [dict(zip(header, r)) for r in rows]))
    else:
        write_text(args.out, render_csv(header, rows, meta))


def cmd_multimode(args, cfg):
    spec = config.multimode_from_config(cfg)
    tol = config.tolerances_from_config(cfg)
    curve = thermal_survival(spec, _times(cfg), tol, args.workers,
                             allow_general=args.allow_general)
    _diagnose("multimode", curve)
    _emit_curves(args, curve.times, {"p1": curve.p1}, curve.metadata)


COMMANDS = {
    "survival": cmd_survival,
    "bound": cmd_bound,
    "sweep": cmd_sweep,
    "multimode": cmd_multimode,
    "figure": cmd_figure,
}


def main(argv=None):
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        cfg = merged_config(args)
        COMMANDS[args.command](args, cfg)
    except (ThermoZenoError, OSError) as exc:
        print(json.dumps({"error": type(exc).__name__, "message": str(exc)}), file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
