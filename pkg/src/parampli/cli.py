"""Command-line front end: ``parampli <subcommand> [options]``.

Values come from, in increasing precedence: built-in defaults, a JSON
``--config`` file (keys mirror flag names; an earlier output file is also
accepted) and command-line flags. Every output embeds the resolved config so
a run can be replayed with ``--config <output>``.

Exit codes: 0 success, 1 internal inconsistency, 2 invalid input.
"""
from __future__ import annotations

import argparse
import concurrent.futures
import contextlib
import io
import json
import logging
import math
import os
import sys
import time

import numpy as np

from . import __version__
from .dynamics import intensity_series
from .entanglement import entanglement_series
from .model import ConsistencyError, ModelParams, ParameterError
from .spectral import eigenfrequencies
from .stability import (CLASSIFY_TOL, NEAR_MARGIN, classify_analytic, classify_spectral,
                        threshold_chi_squared, trace_boundary)
from .svg import polyline_svg
from .validation import run_suite

log = logging.getLogger("parampli")

EXIT_INCONSISTENT = 1
EXIT_INVALID = 2

COMMON = {"delta": 0.5, "kappa": 0.0, "chi": 1.0}
DEFAULTS = {
    "spectrum": dict(COMMON),
    "classify": dict(COMMON, tol=CLASSIFY_TOL, margin=NEAR_MARGIN),
    "stability-map": {"kappas": [0.0, 0.4, 0.8], "delta_min": -3.0, "delta_max": 1.0,
                      "delta_points": 201, "probe": 0.05, "tol": CLASSIFY_TOL},
    "intensity": dict(COMMON, alpha_re=2.0, alpha_im=0.0, t_max=15.0, t_points=1500),
    "entanglement": dict(COMMON, t_max=15.0, t_points=1500),
    "validate": {"seed": 0, "samples": 200, "tol": None},
}
DEFAULT_FORMAT = {"validate": "csv"}

# Flags that affect where or how fast output is produced, not its content.
NOT_ECHOED = {"out", "svg", "threads", "config"}


class InvalidInput(Exception):
    pass


def fmt(x) -> str:
    if isinstance(x, (float, np.floating)):
        return format(float(x), ".17g")
    return str(x)


def _kappa_list(text):
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")


def build_parser() -> argparse.ArgumentParser:
    S = argparse.SUPPRESS
    io_opts = argparse.ArgumentParser(add_help=False)
    io_opts.add_argument("--config", default=S, help="JSON config file (keys mirror flag names)")
    io_opts.add_argument("--out", default=S, help="output path (default: stdout)")
    io_opts.add_argument("--format", choices=("csv", "json"), default=S)
    io_opts.add_argument("--threads", type=int, default=S,
                         help="worker threads (fallback: $PARAMPLI_THREADS, then CPU count)")
    io_opts.add_argument("--svg", default=S, help="also write an SVG line plot to this path")

    point = argparse.ArgumentParser(add_help=False)
    point.add_argument("--delta", type=float, default=S, help="dimensionless detuning")
    point.add_argument("--kappa", type=float, default=S, help="dimensionless collision parameter, [0, 1)")
    point.add_argument("--chi", type=float, default=S, help="dimensionless coupling, >= 0")

    times = argparse.ArgumentParser(add_help=False)
    times.add_argument("--t-max", dest="t_max", type=float, default=S)
    times.add_argument("--t-points", dest="t_points", type=int, default=S)

    parser = argparse.ArgumentParser(prog="parampli", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"parampli {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("spectrum", parents=[io_opts, point], help="eigenfrequencies at one point")

    p = sub.add_parser("classify", parents=[io_opts, point], help="instability regime at one point")
    p.add_argument("--tol", type=float, default=S)
    p.add_argument("--margin", type=float, default=S)

    p = sub.add_parser("stability-map", parents=[io_opts], help="instability thresholds over detuning")
    p.add_argument("--kappas", type=_kappa_list, default=S)
    p.add_argument("--kappa", dest="kappas", type=lambda s: [float(s)], default=S)
    p.add_argument("--delta-min", dest="delta_min", type=float, default=S)
    p.add_argument("--delta-max", dest="delta_max", type=float, default=S)
    p.add_argument("--delta-points", dest="delta_points", type=int, default=S)
    p.add_argument("--probe", type=float, default=S,
                   help="chi^2 offset above threshold at which regime_at_probe is evaluated")
    p.add_argument("--tol", type=float, default=S)

    p = sub.add_parser("intensity", parents=[io_opts, point, times], help="field intensities vs time")
    p.add_argument("--alpha-re", dest="alpha_re", type=float, default=S)
    p.add_argument("--alpha-im", dest="alpha_im", type=float, default=S)

    sub.add_parser("entanglement", parents=[io_opts, point, times], help="entanglement coefficient vs time")

    p = sub.add_parser("validate", parents=[io_opts], help="run the randomized property suite")
    p.add_argument("--seed", type=int, default=S)
    p.add_argument("--samples", type=int, default=S)
    p.add_argument("--tol", type=float, default=S, help="override every tolerance")
    return parser


def load_config(path: str) -> dict:
    """Read a JSON config, a JSON output file or a CSV output file."""
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    if text.lstrip().startswith("#"):
        for line in text.splitlines():
            if line.startswith("# config: "):
                return json.loads(line[len("# config: "):])
        raise InvalidInput(f"{path}: no embedded config found")
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidInput(f"{path}: {exc}") from exc
    if not isinstance(data, dict):
        raise InvalidInput(f"{path}: config must be a JSON object")
    if "metadata" in data:
        data = data["metadata"].get("config", {})
    return {k.replace("-", "_"): v for k, v in data.items()}


def resolve(command: str, flags: dict) -> dict:
    cfg = dict(DEFAULTS[command])
    cfg["format"] = DEFAULT_FORMAT.get(command, "csv")
    if "config" in flags:
        from_file = load_config(flags["config"])
        unknown = set(from_file) - set(cfg) - NOT_ECHOED
        if unknown:
            raise InvalidInput(f"unknown config keys for {command}: {', '.join(sorted(unknown))}")
        cfg.update(from_file)
    cfg.update(flags)
    _check(command, cfg)
    return cfg


def _check(command, cfg):
    for key, v in cfg.items():
        if key in NOT_ECHOED or key == "format" or v is None:
            continue
        values = v if isinstance(v, list) else [v]
        for x in values:
            if not isinstance(x, (int, float)) or isinstance(x, bool) or not math.isfinite(x):
                raise InvalidInput(f"{key} must be a finite number, got {x!r}")
    if cfg.get("format") not in ("csv", "json"):
        raise InvalidInput(f"format must be csv or json, got {cfg.get('format')!r}")
    for key in ("t_points", "delta_points"):
        if key in cfg and (int(cfg[key]) != cfg[key] or cfg[key] < 2):
            raise InvalidInput(f"{key} must be an integer >= 2")
    if command == "stability-map" and not cfg["kappas"]:
        raise InvalidInput("kappas must not be empty")
    if "samples" in cfg and cfg["samples"] < 1:
        raise InvalidInput("samples must be positive")


def thread_count(flags: dict) -> int:
    if "threads" in flags:
        n = flags["threads"]
    elif os.environ.get("PARAMPLI_THREADS"):
        try:
            n = int(os.environ["PARAMPLI_THREADS"])
        except ValueError:
            raise InvalidInput("PARAMPLI_THREADS must be an integer")
    else:
        n = os.cpu_count() or 1
    if n < 1:
        raise InvalidInput("threads must be >= 1")
    return n


def _params(cfg) -> ModelParams:
    return ModelParams(cfg["delta"], cfg["kappa"], cfg["chi"])


def _time_grid(cfg):
    return np.linspace(0.0, cfg["t_max"], int(cfg["t_points"]))


# Each runner returns (columns, rows, svg_series) with rows as lists of values.

def run_spectrum(cfg, executor):
    p = _params(cfg)
    s = eigenfrequencies(p)
    regime = classify_analytic(p)
    row = [p.delta, p.kappa, p.chi]
    for w in s.omegas:
        row += [w.real, w.imag]
    row += [regime.tag.value, regime.gamma, regime.omega_rot, s.gap, s.degenerate]
    cols = ["delta", "kappa", "chi"]
    for k in range(1, 5):
        cols += [f"omega{k}_re", f"omega{k}_im"]
    cols += ["regime", "gamma", "omega_rot", "gap", "degenerate"]
    series = {"eigenfrequencies": (s.omegas.real.tolist(), s.omegas.imag.tolist())}
    return cols, [row], series


def run_classify(cfg, executor):
    p = _params(cfg)
    analytic = classify_analytic(p, margin=cfg["margin"])
    try:
        spectral = classify_spectral(eigenfrequencies(p), tol=cfg["tol"]).tag.value
    except ValueError:
        spectral = "Undetermined"
    thr = threshold_chi_squared(p.delta, p.kappa)
    cols = ["delta", "kappa", "chi", "chi2", "chi2_threshold", "regime", "regime_spectral",
            "gamma", "omega_rot"]
    row = [p.delta, p.kappa, p.chi, p.chi2, "" if thr is None else thr, analytic.tag.value,
           spectral, analytic.gamma, analytic.omega_rot]
    return cols, [row], {}


def run_stability_map(cfg, executor):
    for k in cfg["kappas"]:
        if not 0.0 <= k < 1.0:
            raise ParameterError(f"kappa={k} is outside the model validity range [0, 1)")

    def one(kappa):
        return trace_boundary(kappa, cfg["delta_min"], cfg["delta_max"], int(cfg["delta_points"]),
                              tol=cfg["tol"])

    curves = list(executor.map(one, cfg["kappas"]))
    rows = []
    series = {}
    for c in curves:
        for d, a, b in zip(c.delta, c.chi2_analytic, c.chi2_bisect):
            probe = ModelParams(d, c.kappa, math.sqrt(a + cfg["probe"]))
            rows.append([c.kappa, d, a, b, classify_analytic(probe).tag.value])
        series[f"kappa={c.kappa:g}"] = (c.delta.tolist(), c.chi2_analytic.tolist())
    return ["kappa", "delta", "chi2_analytic", "chi2_bisect", "regime_at_probe"], rows, series


def run_intensity(cfg, executor):
    p = _params(cfg)
    alpha = complex(cfg["alpha_re"], cfg["alpha_im"])
    recs = intensity_series(p, alpha, _time_grid(cfg), executor=executor)
    rows = []
    for r in recs:
        lg = math.log10(r.i_light) if r.i_light > 0 else -math.inf
        rows.append([r.t, r.i_atom, r.i_light, lg])
    series = {"log10 I_light": ([r[0] for r in rows], [r[3] for r in rows])}
    return ["t", "i_atom", "i_light", "log10_i_light"], rows, series


def run_entanglement(cfg, executor):
    recs = entanglement_series(_params(cfg), _time_grid(cfg), executor=executor)
    rows = [[r.t, r.y, r.y_closed, r.y_covariance] for r in recs]
    series = {"Y": ([r.t for r in recs], [r.y for r in recs])}
    return ["t", "y", "y_closed", "y_covariance"], rows, series


def run_validate(cfg, executor):
    results = run_suite(seed=int(cfg["seed"]), samples=int(cfg["samples"]), tol=cfg["tol"])
    rows = [[r.name, "PASS" if r.passed else "FAIL", r.worst, r.tol] for r in results]
    return ["property", "status", "worst", "tol"], rows, {}


RUNNERS = {
    "spectrum": run_spectrum,
    "classify": run_classify,
    "stability-map": run_stability_map,
    "intensity": run_intensity,
    "entanglement": run_entanglement,
    "validate": run_validate,
}
SVG_LABELS = {
    "stability-map": ("delta", "chi^2 threshold"),
    "intensity": ("t", "log10 I_light"),
    "entanglement": ("t", "Y"),
    "spectrum": ("Re omega", "Im omega"),
}


def echo_config(command: str, cfg: dict) -> dict:
    return {k: cfg[k] for k in sorted(cfg) if k not in NOT_ECHOED}


def render(command, cfg, cols, rows) -> str:
    meta = {"tool": "parampli", "version": __version__, "command": command,
            "config": echo_config(command, cfg)}
    if cfg["format"] == "json":
        def val(x):
            if isinstance(x, (np.floating, float)):
                x = float(x)
                return x if math.isfinite(x) else None
            if isinstance(x, np.bool_):
                return bool(x)
            return x
        data = {"metadata": meta, "columns": cols,
                "rows": [dict(zip(cols, map(val, r))) for r in rows]}
        return json.dumps(data, indent=2, allow_nan=False) + "\n"
    buf = io.StringIO()
    buf.write(f"# parampli {__version__} {command}\n")
    buf.write("# config: " + json.dumps(meta["config"], sort_keys=True) + "\n")
    buf.write(",".join(cols) + "\n")
    for r in rows:
        buf.write(",".join(fmt(x) for x in r) + "\n")
    return buf.getvalue()


def execute(command: str, flags: dict) -> tuple[str, list]:
    """Resolve the config, run ``command`` and render its output.

    Returns the rendered text and the rows (for status decisions).
    """
    cfg = resolve(command, flags)
    threads = thread_count(flags)
    start = time.perf_counter()
    with concurrent.futures.ThreadPoolExecutor(max_workers=threads) as pool:
        cols, rows, series = RUNNERS[command](cfg, pool)
    log.info("%s finished in %.3f s on %d thread(s)", command, time.perf_counter() - start, threads)
    text = render(command, cfg, cols, rows)
    if "svg" in flags and series:
        xl, yl = SVG_LABELS.get(command, ("", ""))
        with open(flags["svg"], "w", encoding="utf-8", newline="\n") as fh:
            fh.write(polyline_svg(series, xl, yl))
    return text, rows


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(name)s: %(message)s", stream=sys.stderr)
    flags = {k: v for k, v in vars(args).items() if k not in ("command", "verbose")}
    try:
        text, rows = execute(args.command, flags)
    except (ParameterError, InvalidInput, ValueError, OSError) as exc:
        print(f"parampli: error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except ConsistencyError as exc:
        print(f"parampli: internal inconsistency: {exc}", file=sys.stderr)
        return EXIT_INCONSISTENT

    if "out" in flags:
        with open(flags["out"], "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        with contextlib.suppress(BrokenPipeError):
            sys.stdout.write(text)
            sys.stdout.flush()

    if args.command == "validate" and any(r[1] == "FAIL" for r in rows):
        failed = [r[0] for r in rows if r[1] == "FAIL"]
        print(f"parampli: validation failed: {', '.join(failed)}", file=sys.stderr)
        return EXIT_INCONSISTENT
    return 0


if __name__ == "__main__":
    sys.exit(main())
