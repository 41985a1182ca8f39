"""Command-line driver.

Subcommands:
  build             quantize the well, diagonalize, cache the model
  ermt-derive       sign-randomize a cached model's coupling matrix
  run               one experiment: echo trace CSV + one results row
  sweep             grid of experiments: results CSV + scaling CSV
  surface           P(t1, t2) grid CSV with the reference contour level
  analyze           rebuild scaling curve and lambda* from results CSVs
  config-reference  print the annotated default configuration

Exit codes: 0 success, 2 configuration error, 3 numerical failure,
4 sweep finished with failed cells.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from . import __version__
from .analysis import estimate_lambda_star, scaling_curve
from .basis import build_basis, diagonalize_reference, spectral_diagnostics
from .cache import load_model, model_hash, save_model
from .config import (CONFIG_REFERENCE, cell_signature, config_hash,
                     experiment_cell, load_config, model_cache_name,
                     model_section_hash, sweep_cells)
from .csvio import (write_results, write_scaling, write_surface, write_table,
                    write_traces)
from .errors import ConfigError, EchosimError, NumericalError
from .ermt import randomize_signs
from .experiment import run_cell, run_sweep, surface_with_level


def _out_dir(args, cfg):
    out = args.out or cfg["output"]["directory"]
    os.makedirs(out, exist_ok=True)
    return out


def _meta(cfg, **extra):
    meta = {"config_hash": config_hash(cfg), "version": __version__}
    meta.update(extra)
    return meta


def _model_path(cfg, out):
    return os.path.join(out, model_cache_name(cfg))


def _require_model(cfg, out):
    path = _model_path(cfg, out)
    if not os.path.exists(path):
        kind = cfg["model"]["kind"]
        cmd = "ermt-derive" if kind == "ERMT" else "build"
        raise ConfigError(
            f"model cache {path} not found; run `echosim {cmd} --config "
            f"<your config> --out {out}` first"
        )
    return path


def cmd_build(args):
    cfg = load_config(args.config)
    if cfg["model"]["kind"] != "2DW":
        raise ConfigError("build quantizes 2DW models; use ermt-derive for ERMT")
    out = _out_dir(args, cfg)
    m = cfg["model"]
    basis = build_basis(m["hbar"], m["e_cutoff"])
    window = (m["window_center"] - m["window_half_width"],
              m["window_center"] + m["window_half_width"])
    model = diagonalize_reference(
        basis, x_ref=m["x_ref"], e_center=m["window_center"],
        half_width=m["window_half_width"], edge_margin=m["edge_margin"],
        keep_vectors=m["keep_vectors"])
    diag = spectral_diagnostics(model)
    path = _model_path(cfg, out)
    save_model(path, model)
    diag_path = path[:-4] + ".diag.json"
    payload = {
        "model_hash": model_hash(model),
        "n_basis": len(basis),
        "n_window": model.n_window,
        "mean_spacing": diag.mean_spacing,
        "sigma": diag.sigma,
        "delta_x_c": diag.delta_x_c,
        "bandwidth_99": diag.bandwidth_99,
        "band_omega": list(diag.band_omega),
        "band_profile": list(diag.band_profile),
        "sigma_convention": diag.sigma_convention,
    }
    with open(diag_path, "w") as f:
        json.dump(payload, f, indent=1, sort_keys=True)
    print(f"cache {path}")
    print(f"model {model_hash(model)}: {len(basis)} basis states, "
          f"{model.n_window} in window [{window[0]:g}, {window[1]:g}]")
    print(f"mean spacing Delta = {diag.mean_spacing:.6g}")
    print(f"sigma = {diag.sigma:.6g} ({diag.sigma_convention})")
    print(f"delta_x_c = {diag.delta_x_c:.6g}")
    print(f"band 99% width = {diag.bandwidth_99:.6g}")
    return 0


def cmd_ermt_derive(args):
    cfg = load_config(args.config)
    m = cfg["model"]
    if m["kind"] != "ERMT":
        raise ConfigError("ermt-derive needs model.kind = ERMT")
    out = _out_dir(args, cfg)
    parent = load_model(m["parent"])
    derived = randomize_signs(parent, seed=int(m["seed"]))
    path = _model_path(cfg, out)
    save_model(path, derived)
    print(f"cache {path}")
    print(f"ERMT model {model_hash(derived)} derived from "
          f"{derived.parent_hash} with seed {m['seed']}")
    return 0


def cmd_run(args):
    cfg = load_config(args.config)
    out = _out_dir(args, cfg)
    model = load_model(_require_model(cfg, out))
    cell = experiment_cell(cfg, seed_offset=args.seed_offset)
    record = run_cell(model, cell, keep_traces=True)
    sig = config_hash(cell_signature(cell, record.model_id))
    meta = _meta(cfg, cell_hash=sig, period=record.period,
                 epsilon_evol=record.epsilon_evol,
                 lambda_value=record.lambda_value, kind=record.prep_kind)
    trace_path = os.path.join(out, f"trace_{sig}.csv")
    write_traces(trace_path, record.traces, meta)
    results_path = os.path.join(out, "results.csv")
    write_results(results_path, [record], _meta(cfg))
    print(f"trace {trace_path}")
    print(f"results {results_path}")
    print(f"t_r = {record.t_r:.6g}  t_r/T = {record.t_r_over_T:.4f}  "
          f"p_max = {record.p_max:.4f}  lambda = {record.lambda_value:g}")
    return 0


def cmd_sweep(args):
    cfg = load_config(args.config)
    out = _out_dir(args, cfg)
    model_path = _require_model(cfg, out)
    cells = sweep_cells(cfg, seed_offset=args.seed_offset)
    records = run_sweep(model_path, cells, workers=args.workers)
    order = sorted(
        range(len(records)),
        key=lambda i: config_hash(cell_signature(cells[i], records[i].model_id)))
    records = [records[i] for i in order]
    results_path = os.path.join(out, "results.csv")
    write_results(results_path, records, _meta(cfg, cells=len(records)))
    print(f"results {results_path} ({len(records)} cells)")
    good = [r for r in records if not r.error]
    failed = [r for r in records if r.error]
    finite = [r for r in good if np.isfinite(r.lambda_value) and r.lambda_value > 0]
    if len({round(r.lambda_value, 12) for r in finite}) >= 2:
        curve = scaling_curve([_as_point(r) for r in finite])
        scaling_path = os.path.join(out, "scaling.csv")
        write_scaling(scaling_path, curve, _meta(cfg, monotone=curve.monotone))
        print(f"scaling {scaling_path} ({len(curve.lambda_values)} bins)")
    for r in failed:
        print(f"failed cell eps_prep={r.epsilon_prep:g} "
              f"eps_evol={r.epsilon_evol:g}: {r.error}", file=sys.stderr)
    return 4 if failed else 0


def _as_point(record):
    from .analysis import ScalingPoint

    return ScalingPoint(
        lambda_value=record.lambda_value,
        t_r_over_T=record.t_r_over_T,
        epsilon_prep=record.epsilon_prep,
        epsilon_evol=record.epsilon_evol,
        period=record.period,
        kind=record.model_id.split(":", 1)[0] or "2DW",
        uncertainty=record.spread,
    )


def cmd_surface(args):
    cfg = load_config(args.config)
    out = _out_dir(args, cfg)
    model = load_model(_require_model(cfg, out))
    s = cfg["surface"]
    ee = s["epsilon_evol"]
    if ee is None:
        ee = cfg["experiment"]["epsilon_evol"]
    period = s["period"] if s["period"] is not None else cfg["experiment"]["period"]
    from .config import preparation_spec

    spec = preparation_spec(cfg)
    t1, t2, p, level = surface_with_level(
        model, spec, float(ee), float(period), n_grid=int(s["n_grid"]))
    path = os.path.join(out, "surface.csv")
    meta = _meta(cfg, level=f"{level!r}", period=period, epsilon_evol=ee,
                 t_half=0.5 * float(period))
    write_surface(path, t1, t2, p, meta)
    print(f"surface {path} ({len(t1)}x{len(t2)} grid)")
    print(f"contour level P_LE(T/2) = {level:.6g}")
    return 0


def cmd_analyze(args):
    cfg = load_config(args.config)
    out = _out_dir(args, cfg)
    from .csvio import read_table

    paths = cfg["analyze"]["results"]
    if paths is None:
        paths = [os.path.join(out, "results.csv")]
    elif isinstance(paths, str):
        paths = [paths]
    points = []
    for path in paths:
        _, rows = read_table(path)
        for row in rows:
            if row.get("error"):
                continue
            lam = float(row["lambda"])
            if not np.isfinite(lam) or lam <= 0:
                continue
            from .analysis import ScalingPoint

            points.append(ScalingPoint(
                lambda_value=lam,
                t_r_over_T=float(row["t_r_over_T"]),
                epsilon_prep=float(row["epsilon_prep"]),
                epsilon_evol=float(row["epsilon_evol"]),
                period=float(row["T"]),
                kind=row["model"].split(":", 1)[0] or "2DW",
            ))
    curve = scaling_curve(points)
    est = None
    try:
        est = estimate_lambda_star(curve)
    except EchosimError as exc:
        print(f"lambda* unavailable: {exc}", file=sys.stderr)
    meta = _meta(cfg, monotone=curve.monotone)
    if est is not None:
        meta["lambda_star"] = f"{est.value!r}"
        meta["lambda_star_uncertainty"] = f"{est.uncertainty!r}"
    path = os.path.join(out, "scaling.csv")
    write_scaling(path, curve, meta)
    print(f"scaling {path} ({len(curve.lambda_values)} bins, "
          f"monotone={curve.monotone})")
    if est is not None:
        print(f"lambda* = {est.value:.4f} +/- {est.uncertainty:.4f} "
              f"({est.n_plateau_bins} plateau bins)")
    return 0


def cmd_config_reference(args):
    del args
    sys.stdout.write(CONFIG_REFERENCE)
    return 0


_COMMANDS = {
    "build": cmd_build,
    "ermt-derive": cmd_ermt_derive,
    "run": cmd_run,
    "sweep": cmd_sweep,
    "surface": cmd_surface,
    "analyze": cmd_analyze,
    "config-reference": cmd_config_reference,
}


def build_parser():
    parser = argparse.ArgumentParser(
        prog="echosim",
        description="time-reversal echo experiments in a quantized chaotic well",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)
    for name in _COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--config", default=None, help="YAML config path")
        p.add_argument("--out", default=None, help="output directory")
        p.add_argument("--workers", type=int, default=None,
                       help="sweep worker processes (default: CPU count)")
        p.add_argument("--seed-offset", type=int, default=0,
                       help="shift all realization seeds by K")
        p.add_argument("--format", default="csv", choices=["csv"],
                       help="output format")
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except NumericalError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 3
    except EchosimError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
