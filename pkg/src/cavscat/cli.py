"""Command-line front end.

    cavscat phase-shifts --k-over-kappa 0.1 --size 2.35741 --out b.csv
    cavscat scan --quantity total_b --range 0:15:0.005 --k-over-kappa 0.1 --out comb.csv
    cavscat differential --k-over-kappa 10 --size 100 --out lobe.csv
    cavscat resonances --m-range 0:3 --window 0:6 --k-over-kappa 0.1 --out res.csv
    cavscat figure --id 6 --outdir fig6/

Settings come from ``--config`` (flat ``key = value`` lines, or a run
manifest written by an earlier run) overridden by flags. Exit codes:
0 success, 2 configuration error, 3 convergence failure, 4 I/O error.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import asdict, dataclass, field
from datetime import datetime, timezone

import numpy as np

from . import __version__
from .figures import PARAMETERS, make_figure
from .model import ConfigError, ConvergenceError, ModeFunction, ScatterConfig, Tolerances
from .resonances import find_resonances, sort_records, write_records
from .scattering import build_table, differential
from .sweep import parse_pair, parse_quantity, parse_range, resolve_threads, scan, write_csv

EXIT_CONFIG, EXIT_CONVERGENCE, EXIT_IO = 2, 3, 4

# config keys, their flag destinations and parsers
_KEYS = {
    "mode": str,
    "k_over_kappa_n": float,
    "n": int,
    "size": float,
    "m_max": lambda s: None if str(s).strip().lower() == "auto" else int(s),
    "theta_points": int,
    "series_tail": float,
    "ode_step": float,
    "root_tol": float,
    "threads": lambda s: "auto" if str(s).strip().lower() == "auto" else int(s),
}
_ALIASES = {"k_over_kappa": "k_over_kappa_n", "k/kappa_n": "k_over_kappa_n"}
_DEFAULTS = {"mode": "constant", "n": 0, "size": 1.0, "m_max": None, "theta_points": 2048,
             "threads": 1, **asdict(Tolerances())}


class _LineError(ConfigError):
    def __init__(self, line, field, message):
        super().__init__(field, message)
        self.line = line

    def __str__(self):
        return f"line {self.line}: {super().__str__()}"


def _parse_value(key, raw, line=None):
    try:
        return _KEYS[key](raw)
    except (TypeError, ValueError):
        err = f"cannot parse {raw!r}"
        raise (_LineError(line, key, err) if line else ConfigError(key, err)) from None


def read_config(path):
    """Settings from a ``key = value`` file or a JSON run manifest."""
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    if text.lstrip().startswith("{"):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise _LineError(exc.lineno, "json", exc.msg) from None
        data = data.get("cfg", data)
        out = {}
        for key, raw in data.items():
            key = _ALIASES.get(key, key)
            if key not in _KEYS:
                raise ConfigError(key, "unknown key")
            out[key] = _parse_value(key, raw) if raw is not None else None
        return out
    out = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise _LineError(lineno, "syntax", f"expected key = value, got {line!r}")
        key, raw = (p.strip() for p in line.split("=", 1))
        key = _ALIASES.get(key, key)
        if key not in _KEYS:
            raise _LineError(lineno, key, "unknown key")
        out[key] = _parse_value(key, raw, lineno)
    return out


def settings_from_args(args):
    merged = dict(_DEFAULTS)
    if getattr(args, "config", None):
        merged.update(read_config(args.config))
    for key in _KEYS:
        val = getattr(args, key, None)
        if val is not None:
            merged[key] = _parse_value(key, val)
    if "k_over_kappa_n" not in merged:
        raise ConfigError("k_over_kappa_n", "required (flag --k-over-kappa or config key)")
    return merged


def config_from_settings(s):
    tol = Tolerances(s["series_tail"], s["ode_step"], s["root_tol"])
    try:
        mode = ModeFunction(s["mode"], s["size"])
    except ValueError as exc:
        if isinstance(exc, ConfigError):
            raise
        raise ConfigError("mode", f"unknown mode {s['mode']!r}; expected constant or gaussian") from None
    return ScatterConfig(mode, s["k_over_kappa_n"], s["n"], s["m_max"], s["theta_points"], tol)


def echo(s):
    """Settings as written into a manifest (readable back by ``--config``)."""
    out = dict(s)
    out["m_max"] = "auto" if s["m_max"] is None else s["m_max"]
    return out


@dataclass
class RunManifest:
    command: str
    cfg: dict
    timestamp: str = field(default_factory=lambda: datetime.now(timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ"))
    code_version: str = __version__
    output_paths: list = field(default_factory=list)
    extra: dict = field(default_factory=dict)

    def write(self, path):
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(asdict(self), fh, indent=2, sort_keys=True)
            fh.write("\n")
        return path


def _manifest_path(out):
    return os.path.splitext(out)[0] + ".manifest.json"


# commands ----------------------------------------------------------------------

def cmd_phase_shifts(args, s):
    table = build_table(config_from_settings(s))
    rows = [(int(m), table.delta_plus[m], table.delta_minus[m], table.B_a[m].real, table.B_a[m].imag,
             table.B_b[m].real, table.B_b[m].imag, abs(table.B_a[m]) ** 2, abs(table.B_b[m]) ** 2)
            for m in table.m]
    header = ["m", "delta_plus", "delta_minus", "re_B_a", "im_B_a", "re_B_b", "im_B_b", "abs2_B_a", "abs2_B_b"]
    return [write_csv(args.out, header, rows)], {}


def cmd_scan(args, s):
    name, m = parse_quantity(args.quantity)
    xs = parse_range(args.range)
    vals = scan(config_from_settings(s), xs, [(name, m)], resolve_threads(s["threads"]))
    return [write_csv(args.out, ["x", "value"], np.column_stack([xs, vals[:, 0]]))], \
        {"quantity": args.quantity, "range": args.range}


def cmd_differential(args, s):
    cfg = config_from_settings(s)
    d = differential(build_table(cfg), points=cfg.theta_points)
    return [write_csv(args.out, ["theta_rad", "lambda_a", "lambda_b"],
                      np.column_stack([d.thetas, d.lambda_a, d.lambda_b]))], {}


def cmd_resonances(args, s):
    cfg = config_from_settings(s)
    lo_m, hi_m = (int(v) for v in parse_pair(args.m_range, "m_range"))
    window = parse_pair(args.window, "window")
    records = []
    for m in range(lo_m, hi_m + 1):
        records += find_resonances(m, window, cfg.k, cfg.n, gamma_max=args.gamma_max,
                                   root_tol=cfg.tolerances.root_tol)
    write_records(sort_records(records), args.out)
    return [args.out], {"m_range": args.m_range, "window": args.window, "gamma_max": args.gamma_max}


def cmd_figure(args, s):
    paths = make_figure(args.id, args.outdir, resolve_threads(s["threads"]))
    return paths, {"figure": args.id}


def _shared(p):
    p.add_argument("--mode", choices=["constant", "gaussian"], help="transverse mode profile")
    p.add_argument("--k-over-kappa", dest="k_over_kappa_n", help="k / kappa_n")
    p.add_argument("--n", help="photon number")
    p.add_argument("--size", help="kappa R (constant) or kappa sigma (gaussian)")
    p.add_argument("--m-max", dest="m_max", help="truncation order or 'auto'")
    p.add_argument("--config", help="key = value file or run manifest")
    p.add_argument("--threads", help="worker processes or 'auto'")


def build_parser():
    parser = argparse.ArgumentParser(prog="cavscat", description="Atom scattering by a resonant cavity mode")
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("phase-shifts", help="phase shifts and exit-channel coefficients per order")
    _shared(p)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_phase_shifts)
    p = sub.add_parser("scan", help="a quantity over a range of interaction lengths")
    _shared(p)
    p.add_argument("--quantity", required=True, help="total_a|total_b|total_plus|total_minus|coeff_a:M|coeff_b:M")
    p.add_argument("--range", required=True, help="start:stop:step in kappa R or kappa sigma")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_scan)
    p = sub.add_parser("differential", help="angular distributions on a uniform grid")
    _shared(p)
    p.add_argument("--theta-points", dest="theta_points")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_differential)
    p = sub.add_parser("resonances", help="quasibound-state positions and widths")
    _shared(p)
    p.add_argument("--m-range", default="0:3", help="lo:hi orders, inclusive")
    p.add_argument("--window", required=True, help="lo:hi in kappa R")
    p.add_argument("--gamma-max", type=float, default=2.0)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_resonances)
    p = sub.add_parser("figure", help="datasets of a reproduced figure")
    _shared(p)
    p.add_argument("--id", type=int, required=True, choices=sorted(PARAMETERS))
    p.add_argument("--outdir", required=True)
    p.set_defaults(func=cmd_figure)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        if args.command == "figure":
            # figures carry their own parameters; only threads are honoured
            s = {"threads": 1 if args.threads is None else _parse_value("threads", args.threads)}
        else:
            s = settings_from_args(args)
            config_from_settings(s)
        paths, extra = args.func(args, s)
        cfg_echo = dict(PARAMETERS[args.id], threads=s["threads"]) if args.command == "figure" else echo(s)
        manifest = RunManifest(args.command, cfg_echo, output_paths=list(paths), extra=extra)
        target = os.path.join(args.outdir, f"fig{args.id}_manifest.json") if args.command == "figure" \
            else _manifest_path(args.out)
        manifest.write(target)
    except ConfigError as exc:
        print(f"cavscat: config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except ConvergenceError as exc:
        print(f"cavscat: convergence failure: {exc}", file=sys.stderr)
        return EXIT_CONVERGENCE
    except OSError as exc:
        print(f"cavscat: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    return 0


if __name__ == "__main__":
    sys.exit(main())
