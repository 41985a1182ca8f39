"""Config files: one YAML document drives every CLI command.

The schema mirrors the experiment structure: a ``model`` section
(quantization parameters or an ERMT derivation), a ``preparation``
section, an ``experiment`` section for single runs, and optional
``sweep``/``surface``/``analyze`` sections. Unset keys fall back to the
defaults below; ``echosim config-reference`` prints the annotated
reference. A config plus the code version pins every output byte; the
canonical hash of the resolved config is stamped into all CSV headers.
"""

from __future__ import annotations

import copy
import hashlib
import json
import math

import yaml

from .errors import ConfigError
from .prepare import PreparationSpec

DEFAULTS = {
    "model": {
        "kind": "2DW",
        "hbar": 0.05,
        "e_cutoff": 5.0,
        "window_center": 3.0,
        "window_half_width": 0.5,
        "x_ref": 1.0,
        "keep_vectors": True,
        "edge_margin": 0.25,
        "parent": None,
        "seed": 0,
    },
    "preparation": {
        "kind": "ergodic",
        "epsilon_prep": 0.4,
        "prep_time": 20.0,
        "energy_width": 0.1,
        "center_energy": None,
        "phase_space_center": None,
        "seed": 0,
    },
    "experiment": {
        "epsilon_evol": 0.2,
        "period": 0.4,
        "n_samples": 512,
        "realizations": 8,
        "average_traces": False,
    },
    "sweep": {
        "epsilon_prep": None,
        "epsilon_evol": None,
        "lambda": None,
        "period": None,
        "realizations": None,
        "cells": None,
    },
    "surface": {
        "n_grid": 129,
        "epsilon_evol": None,
        "period": None,
    },
    "analyze": {
        "results": None,
    },
    "output": {
        "directory": "out",
    },
}

_VALID_MODEL_KINDS = ("2DW", "ERMT")


def _merge(base, override, path="config"):
    out = copy.deepcopy(base)
    for key, value in override.items():
        if key not in base:
            raise ConfigError(f"unknown key {path}.{key}")
        if isinstance(base[key], dict) and isinstance(value, dict):
            out[key] = _merge(base[key], value, f"{path}.{key}")
        else:
            out[key] = value
    return out


def load_config(path=None, overrides=None):
    """Read a YAML config and merge it over the defaults."""
    cfg = copy.deepcopy(DEFAULTS)
    if path is not None:
        try:
            with open(path) as f:
                user = yaml.safe_load(f) or {}
        except OSError as exc:
            raise ConfigError(f"cannot read config {path}: {exc}") from exc
        except yaml.YAMLError as exc:
            raise ConfigError(f"config {path} is not valid YAML: {exc}") from exc
        if not isinstance(user, dict):
            raise ConfigError(f"config {path} must be a mapping at top level")
        cfg = _merge(cfg, user)
    if overrides:
        cfg = _merge(cfg, overrides)
    validate_config(cfg)
    return cfg


def validate_config(cfg):
    m = cfg["model"]
    if m["kind"] not in _VALID_MODEL_KINDS:
        raise ConfigError(f"model.kind must be one of {_VALID_MODEL_KINDS}")
    if m["kind"] == "2DW":
        if m["hbar"] <= 0:
            raise ConfigError("model.hbar must be positive")
        if m["e_cutoff"] <= 0:
            raise ConfigError("model.e_cutoff must be positive")
        if m["window_half_width"] <= 0:
            raise ConfigError("model.window_half_width must be positive")
    else:
        if not m["parent"]:
            raise ConfigError("ERMT model needs model.parent (parent cache path)")
    e = cfg["experiment"]
    if e["epsilon_evol"] < 0:
        raise ConfigError("experiment.epsilon_evol must be nonnegative")
    if e["period"] <= 0:
        raise ConfigError("experiment.period must be positive")
    if e["n_samples"] < 2 or e["n_samples"] % 2:
        raise ConfigError("experiment.n_samples must be even and >= 2")
    if e["realizations"] < 1:
        raise ConfigError("experiment.realizations must be >= 1")
    # constructing the spec runs the preparation-level checks
    preparation_spec(cfg)


def _canonical(obj):
    if isinstance(obj, dict):
        return {k: _canonical(obj[k]) for k in sorted(obj)}
    if isinstance(obj, (list, tuple)):
        return [_canonical(v) for v in obj]
    if isinstance(obj, float):
        if math.isnan(obj):
            return "nan"
        return float(repr(obj))
    return obj


def config_hash(obj):
    """Stable 16-hex digest of any JSON-serializable config fragment."""
    blob = json.dumps(_canonical(obj), sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()[:16]


def model_section_hash(cfg):
    m = cfg["model"]
    if m["kind"] == "2DW":
        keys = ("kind", "hbar", "e_cutoff", "window_center",
                "window_half_width", "x_ref", "keep_vectors", "edge_margin")
    else:
        keys = ("kind", "parent", "seed")
    return config_hash({k: m[k] for k in keys})


def model_cache_name(cfg):
    return f"model_{cfg['model']['kind'].lower()}_{model_section_hash(cfg)}.npz"


def preparation_spec(cfg):
    p = cfg["preparation"]
    center = p["phase_space_center"]
    if center is not None:
        center = tuple(float(v) for v in center)
        if len(center) not in (2, 4):
            raise ConfigError(
                "preparation.phase_space_center must have 2 or 4 entries")
    return PreparationSpec(
        kind=p["kind"],
        epsilon_prep=float(p["epsilon_prep"]),
        phase_space_center=center,
        energy_width=None if p["energy_width"] is None else float(p["energy_width"]),
        center_energy=None if p["center_energy"] is None else float(p["center_energy"]),
        prep_time=float(p["prep_time"]),
        seed=int(p["seed"]),
    )


def experiment_cell(cfg, seed_offset=0, **overrides):
    """Resolve the experiment section (plus overrides) into a cell."""
    from dataclasses import replace as dc_replace

    from .experiment import ExperimentCell

    e = dict(cfg["experiment"])
    spec = preparation_spec(cfg)
    prep_over = {k: v for k, v in overrides.items()
                 if k in ("kind", "epsilon_prep", "prep_time", "energy_width",
                          "center_energy", "phase_space_center", "seed")}
    if prep_over:
        spec = dc_replace(spec, **prep_over)
    for k in ("epsilon_evol", "period", "n_samples", "realizations",
              "average_traces"):
        if k in overrides:
            e[k] = overrides[k]
    return ExperimentCell(
        prep=spec,
        epsilon_evol=float(e["epsilon_evol"]),
        period=float(e["period"]),
        n_samples=int(e["n_samples"]),
        realizations=int(e["realizations"]),
        seed_offset=int(seed_offset),
        average_traces=bool(e["average_traces"]),
    )


def sweep_cells(cfg, seed_offset=0):
    """Expand the sweep section into a list of cells.

    Two forms are supported: a grid of epsilon_prep x (epsilon_evol or
    lambda), and an explicit ``cells`` list of per-cell overrides. The
    lambda form fixes epsilon_evol = lambda * epsilon_prep per cell so
    different rows of the grid share lambda values exactly.
    """
    s = cfg["sweep"]
    cells = []
    period = s["period"] if s["period"] is not None else cfg["experiment"]["period"]
    realiz = (s["realizations"] if s["realizations"] is not None
              else cfg["experiment"]["realizations"])
    eps_preps = s["epsilon_prep"]
    if eps_preps is None:
        eps_preps = [cfg["preparation"]["epsilon_prep"]]
    if s["lambda"] is not None and s["epsilon_evol"] is not None:
        raise ConfigError("sweep: give either lambda or epsilon_evol, not both")
    if s["lambda"] is not None:
        for ep in eps_preps:
            for lam in s["lambda"]:
                cells.append(experiment_cell(
                    cfg, seed_offset,
                    epsilon_prep=float(ep), epsilon_evol=float(lam) * float(ep),
                    period=period, realizations=realiz))
    elif s["epsilon_evol"] is not None:
        for ep in eps_preps:
            for ee in s["epsilon_evol"]:
                cells.append(experiment_cell(
                    cfg, seed_offset,
                    epsilon_prep=float(ep), epsilon_evol=float(ee),
                    period=period, realizations=realiz))
    for over in s["cells"] or []:
        if not isinstance(over, dict):
            raise ConfigError("sweep.cells entries must be mappings")
        cells.append(experiment_cell(cfg, seed_offset, **over))
    if not cells:
        raise ConfigError(
            "sweep section is empty: set epsilon_evol, lambda, or cells")
    return cells


def cell_signature(cell, model_id):
    """Canonical per-cell dict; its hash orders sweep rows."""
    prep = cell.prep
    return {
        "model": model_id,
        "prep": {
            "kind": prep.kind,
            "epsilon_prep": prep.epsilon_prep,
            "phase_space_center": prep.phase_space_center,
            "energy_width": prep.energy_width,
            "center_energy": prep.center_energy,
            "prep_time": prep.prep_time,
            "seed": prep.seed,
        },
        "epsilon_evol": cell.epsilon_evol,
        "period": cell.period,
        "n_samples": cell.n_samples,
        "realizations": cell.realizations,
        "seed_offset": cell.seed_offset,
        "average_traces": cell.average_traces,
    }


CONFIG_REFERENCE = """\
# echosim configuration reference
# All keys are optional; values below are the defaults.

model:
  kind: 2DW              # 2DW (quantized well) or ERMT (sign-randomized derivative)
  hbar: 0.05             # effective Planck constant
  e_cutoff: 5.0          # oscillator-shell energy cutoff of the basis
  window_center: 3.0     # center of the analysis energy window
  window_half_width: 0.5 # half-width of the analysis window
  x_ref: 1.0             # coupling of the reference Hamiltonian E = H(x_ref)
  keep_vectors: true     # store window eigenvectors (needed by coherent states)
  edge_margin: 0.25      # reject windows reaching into the top margin of the spectrum
  parent: null           # ERMT only: path to the parent 2DW cache
  seed: 0                # ERMT only: sign-randomization seed

preparation:
  kind: ergodic          # ergodic | eigenstate | coherent | random-superposition
  epsilon_prep: 0.4      # preparation perturbation strength (ergodic)
  prep_time: 20.0        # ergodic evolution time, units of the classical period
  energy_width: 0.1      # random-superposition intensity width
  center_energy: null    # envelope/shell center; default: window center
  phase_space_center: null  # coherent center [Q1, Q2] or [Q1, Q2, P1, P2]
  seed: 0                # base seed; realizations offset it

experiment:
  epsilon_evol: 0.2      # evolution perturbation: H_1,2 = E +/- epsilon_evol * B
  period: 0.4            # total echo period T
  n_samples: 512         # even number of grid steps over [0, T]
  realizations: 8        # independent initial conditions per cell
  average_traces: false  # true: find t_r on the averaged trace instead

sweep:                   # grid = epsilon_prep x (epsilon_evol | lambda)
  epsilon_prep: null     # list; default: [preparation.epsilon_prep]
  epsilon_evol: null     # list of absolute evolution strengths
  lambda: null           # list of ratios; epsilon_evol = lambda * epsilon_prep
  period: null           # override experiment.period
  realizations: null     # override experiment.realizations
  cells: null            # explicit list of per-cell override mappings

surface:
  n_grid: 129            # t1 grid points over [0, T] (t2 uses half)
  epsilon_evol: null     # override experiment.epsilon_evol
  period: null           # override experiment.period

analyze:
  results: null          # results CSV path(s); default: <out>/results.csv

output:
  directory: out         # default output directory (--out overrides)
"""
