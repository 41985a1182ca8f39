"""Experiment orchestration: realizations, rate fits, sweeps.

One experiment cell = (model, preparation, epsilon_evol, period). Each
cell is repeated over independent realizations (seed levels, jittered
centers, or RNG streams depending on the preparation kind); t_r is
extracted per realization and then averaged, which is the default
averaging mode. Sweeps map cells over a process pool; every cell is
deterministic given its resolved parameters, so results do not depend
on worker count or scheduling order.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np

from .analysis import (CompensationResult, combine_compensations,
                       echo_condition, find_tr, fit_gamma)
from .errors import ConfigError, EchosimError, NumericalError
from .prepare import PreparationSpec, lambda_value, prepare_state
from .propagate import (DEFAULT_N_SAMPLES, EvolutionPair, echo_trace,
                        fidelity_trace, survival_trace)

RATE_SCAN_T_MAX = 8.0
RATE_SCAN_SAMPLES = 2048


@dataclass(frozen=True)
class ExperimentCell:
    """Resolved parameters of a single experiment (one CSV row)."""

    prep: PreparationSpec
    epsilon_evol: float
    period: float
    n_samples: int = DEFAULT_N_SAMPLES
    realizations: int = 8
    seed_offset: int = 0
    average_traces: bool = False
    label: str = ""

    def lambda_flag(self):
        return lambda_value(self.prep, self.epsilon_evol)


@dataclass
class ExperimentRecord:
    """Aggregated outcome of one cell, ready for CSV serialization."""

    model_id: str
    hbar: float
    prep_kind: str
    epsilon_prep: float
    epsilon_evol: float
    lambda_value: float
    period: float
    t_r: float
    t_r_over_T: float
    p_max: float
    gamma_sr: float
    gamma_le: float
    n_realizations: int
    spread: float = 0.0
    condition_fraction: float = math.nan
    error: str = ""
    traces: tuple = field(default_factory=tuple, repr=False)


def _try_rate(times, p, saturation):
    try:
        return fit_gamma(times, p, saturation_level=saturation).gamma
    except EchosimError:
        return math.nan


def run_cell(model, cell, keep_traces=False):
    """Run all realizations of one cell and aggregate."""
    from .cache import model_hash

    pair = EvolutionPair(model, cell.epsilon_evol)
    times = np.linspace(0.0, cell.period, cell.n_samples + 1)
    comps, gsr, gle, cond_hits = [], [], [], 0
    traces = []
    trace_stack = None
    for r in range(cell.realizations):
        psi = prepare_state(model, cell.prep, cell.seed_offset + r)
        trace = echo_trace(pair, psi, cell.period, cell.n_samples,
                           realization=cell.seed_offset + r)
        if keep_traces:
            traces.append(trace)
        if cell.average_traces:
            if trace_stack is None:
                trace_stack = np.zeros_like(trace.p_values)
            trace_stack += trace.p_values
        else:
            comps.append(find_tr(trace))
        a1 = pair.v1.conj().T @ psi
        a2 = pair.v2.conj().T @ psi
        sat_sr = float(np.sum(np.abs(a1) ** 4))
        sat_le = float(max(np.sum(np.abs(a1) ** 4), np.sum(np.abs(a2) ** 4)))
        gsr.append(_try_rate(times, survival_trace(pair, psi, times), sat_sr))
        gle.append(_try_rate(times, fidelity_trace(pair, psi, times), sat_le))
        _, _, satisfied = echo_condition(psi, pair, cell.period)
        cond_hits += int(satisfied)
    if cell.average_traces:
        mean_trace = echo_trace(pair, psi, cell.period, cell.n_samples)
        mean_trace.p_values = trace_stack / cell.realizations
        comp = find_tr(mean_trace)
        comp = replace(comp, n_realizations=cell.realizations)
    else:
        comp = combine_compensations(comps, cell.period)
    gsr = np.array(gsr)
    gle = np.array(gle)
    return ExperimentRecord(
        model_id=f"{model.kind}:{model_hash(model)}",
        hbar=model.hbar,
        prep_kind=cell.prep.kind,
        epsilon_prep=cell.prep.epsilon_prep,
        epsilon_evol=cell.epsilon_evol,
        lambda_value=cell.lambda_flag(),
        period=cell.period,
        t_r=comp.t_r,
        t_r_over_T=comp.t_r_over_T,
        p_max=comp.p_max,
        gamma_sr=float(np.nanmedian(gsr)) if np.any(np.isfinite(gsr)) else math.nan,
        gamma_le=float(np.nanmedian(gle)) if np.any(np.isfinite(gle)) else math.nan,
        n_realizations=cell.realizations,
        spread=comp.spread,
        condition_fraction=cond_hits / cell.realizations,
        traces=tuple(traces),
    )


def _seed_survival_fit(pair, level_index, t_max, n_samples):
    psi = np.zeros(pair.v1.shape[0], dtype=complex)
    psi[level_index] = 1.0
    a1 = pair.v1.conj().T @ psi
    sat = float(np.sum(np.abs(a1) ** 4))
    times = np.linspace(0.0, t_max, n_samples + 1)
    p = survival_trace(pair, psi, times)
    return fit_gamma(times, p, saturation_level=sat)


def measure_survival_rate(model, epsilon, level_index, t_max=RATE_SCAN_T_MAX,
                          n_samples=RATE_SCAN_SAMPLES):
    """DecayFit of the seed-eigenstate survival under E + epsilon*B.

    This is the local-density-of-states width measurement: the decay
    rate of |<seed| exp(-i (E + eps B) t / hbar) |seed>|^2, fitted with
    the seed's exact saturation (its inverse participation ratio in the
    perturbed eigenbasis).
    """
    pair = EvolutionPair(model, epsilon)
    return _seed_survival_fit(pair, level_index, t_max, n_samples)


def median_survival_rate(model, epsilon, realizations=40, seed_offset=0,
                         min_success=0.5, t_max=RATE_SCAN_T_MAX,
                         n_samples=RATE_SCAN_SAMPLES):
    """Median per-seed decay rate over window levels around the center.

    The perturbed Hamiltonian is diagonalized once and shared by all
    seeds. Individual seeds whose traces cannot be fitted are skipped;
    fails if fewer than ``min_success`` of the seeds produce a fit.
    Per-seed fitting with median aggregation is deliberate: a mean
    trace over seeds is a mixture of exponentials with dispersed rates
    and does not fit a single line in log space.
    """
    from .prepare import _seed_level

    pair = EvolutionPair(model, epsilon)
    fits = []
    for r in range(realizations):
        idx = _seed_level(model.n_window, seed_offset + r)
        try:
            fits.append(_seed_survival_fit(pair, idx, t_max, n_samples))
        except EchosimError:
            continue
    if len(fits) < min_success * realizations:
        raise NumericalError(
            f"survival-rate fit succeeded for only {len(fits)} of "
            f"{realizations} seeds at epsilon={epsilon}"
        )
    gammas = np.array([f.gamma for f in fits])
    resid = np.array([f.residual for f in fits])
    return float(np.median(gammas)), float(np.median(resid)), len(fits)


_WORKER_MODELS = {}


def _load_worker_model(path):
    model = _WORKER_MODELS.get(path)
    if model is None:
        from .cache import load_model

        model = load_model(path)
        _WORKER_MODELS[path] = model
    return model


def _run_cell_from_path(args):
    path, cell = args
    model = _load_worker_model(path)
    try:
        return run_cell(model, cell)
    except EchosimError as exc:
        prep = cell.prep
        return ExperimentRecord(
            model_id="", hbar=math.nan, prep_kind=prep.kind,
            epsilon_prep=prep.epsilon_prep, epsilon_evol=cell.epsilon_evol,
            lambda_value=cell.lambda_flag(), period=cell.period,
            t_r=math.nan, t_r_over_T=math.nan, p_max=math.nan,
            gamma_sr=math.nan, gamma_le=math.nan,
            n_realizations=cell.realizations,
            error=f"{type(exc).__name__}: {exc}",
        )


def run_sweep(model_path, cells, workers=None):
    """Run many cells against a cached model, in parallel.

    Failed cells are recorded with an error tag instead of aborting the
    sweep. Returns the records in input order.
    """
    if workers is None:
        workers = os.cpu_count() or 1
    tasks = [(model_path, cell) for cell in cells]
    if workers <= 1 or len(cells) <= 1:
        return [_run_cell_from_path(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_run_cell_from_path, tasks))


def surface_with_level(model, prep_spec, epsilon_evol, period,
                       n_grid=129, realization=0, max_cells=4_000_000):
    """P(t1, t2) product grid plus the reference contour level P_LE(T/2)."""
    from .propagate import surface as surface_grid

    if n_grid * n_grid > max_cells:
        raise ConfigError(
            f"surface grid {n_grid}x{n_grid} exceeds {max_cells} cells"
        )
    pair = EvolutionPair(model, epsilon_evol)
    psi = prepare_state(model, prep_spec, realization)
    t1 = np.linspace(0.0, period, n_grid)
    t2 = np.linspace(0.0, 0.5 * period, (n_grid + 1) // 2)
    p = surface_grid(pair, psi, t1, t2)
    half = 0.5 * period
    level = float(fidelity_trace(pair, psi, [half])[0])
    return t1, t2, p, level
