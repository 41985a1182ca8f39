"""Trace analysis: compensation times, scaling curve, decay rates.

The compensation time t_r is the location of the maximum return
probability over the reversed segment [T/2, T] of an echo trace. Across
preparations and perturbation strengths the reduced quantity t_r/T
collapses onto a single curve f(lambda) of the ratio
lambda = eps_evol/eps_prep, with f(0) = 1 and a plateau f = 0.5 above a
crossover lambda*.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConfigError, NumericalError
from .propagate import fidelity_trace, survival_trace

PLATEAU_TOLERANCE = 0.03
REGIME_CROSSOVER = 5.0


@dataclass(frozen=True)
class CompensationResult:
    """Location and height of the echo maximum on [T/2, T]."""

    t_r: float
    t_r_over_T: float
    p_max: float
    n_realizations: int = 1
    spread: float = 0.0


@dataclass(frozen=True)
class ScalingPoint:
    """One realization-averaged dot of the scaling plot."""

    lambda_value: float
    t_r_over_T: float
    epsilon_prep: float
    epsilon_evol: float
    period: float
    kind: str = "2DW"
    uncertainty: float = 0.0


@dataclass(frozen=True)
class DecayFit:
    """Exponential fit of a survival or fidelity trace."""

    gamma: float
    fit_window: tuple
    residual: float
    n_points: int
    saturation: float
    regime: str | None = None


@dataclass(frozen=True)
class LambdaStarEstimate:
    value: float
    uncertainty: float
    n_plateau_bins: int


def find_tr(trace, refine=True):
    """Compensation time of one echo trace.

    The discrete maximum of P(t) over t in [T/2, T] is located with
    ties broken toward the earliest time, so a monotone-decreasing
    reversed segment yields exactly t_r = T/2. When ``refine`` is set
    and the maximum is interior, a parabola through the three
    surrounding samples sharpens both t_r and p_max. One exception to
    the tie-break: a trace that closes perfectly (P(T) = 1) reports the
    closure time T even when it is degenerate-flat, which happens for
    eigenstates of E at epsilon_evol = 0.
    """
    i0 = trace.reversal_index
    seg_t = trace.times[i0:]
    seg_p = trace.p_values[i0:]
    if seg_p[-1] >= 1.0 - 1e-10:
        return CompensationResult(t_r=float(seg_t[-1]), t_r_over_T=1.0,
                                  p_max=float(seg_p[-1]))
    k = int(np.argmax(seg_p))
    t_r = float(seg_t[k])
    p_max = float(seg_p[k])
    if refine and 0 < k < len(seg_p) - 1:
        pm, pc, pp = seg_p[k - 1], seg_p[k], seg_p[k + 1]
        denom = pm - 2.0 * pc + pp
        if denom < -1e-300:
            h = seg_t[k + 1] - seg_t[k]
            shift = 0.5 * (pm - pp) / denom * h
            shift = float(np.clip(shift, -h, h))
            t_ref = seg_t[k] + shift
            p_ref = pc - 0.25 * (pm - pp) * shift / h
            if seg_t[0] <= t_ref <= seg_t[-1]:
                t_r = float(t_ref)
                p_max = float(max(p_ref, pc))
    ratio = t_r / trace.period
    ratio = min(max(ratio, 0.5), 1.0)
    return CompensationResult(t_r=t_r, t_r_over_T=ratio, p_max=p_max)


def combine_compensations(results, period):
    """Realization average: mean of per-trace t_r, spread of t_r/T."""
    if not results:
        raise ConfigError("no compensation results to combine")
    ratios = np.array([r.t_r_over_T for r in results])
    t_rs = np.array([r.t_r for r in results])
    p_maxes = np.array([r.p_max for r in results])
    return CompensationResult(
        t_r=float(t_rs.mean()),
        t_r_over_T=float(ratios.mean()),
        p_max=float(p_maxes.mean()),
        n_realizations=len(results),
        spread=float(ratios.std()),
    )


def _as_scaling_point(item):
    if isinstance(item, ScalingPoint):
        return item
    config, comp = item
    get = config.get if hasattr(config, "get") else lambda k, d=None: getattr(config, k, d)
    return ScalingPoint(
        lambda_value=float(get("lambda_value")),
        t_r_over_T=comp.t_r_over_T,
        epsilon_prep=float(get("epsilon_prep", 0.0)),
        epsilon_evol=float(get("epsilon_evol", 0.0)),
        period=float(get("period", get("T", 0.0)) or 0.0),
        kind=str(get("kind", "2DW")),
        uncertainty=comp.spread,
    )


@dataclass(frozen=True)
class ScalingCurve:
    """Binned f(lambda): one bin per distinct finite lambda."""

    lambda_values: np.ndarray
    f_mean: np.ndarray
    f_std: np.ndarray
    counts: np.ndarray
    monotone: bool
    points: tuple


def scaling_curve(results, rtol=1e-9):
    """Group ScalingPoints (or (config, CompensationResult) pairs) by lambda.

    Points sharing a finite lambda value (within ``rtol``) form one bin;
    infinite and zero lambda flags are excluded from the binned curve
    but kept in ``points``. A monotone-nonincreasing check on the
    binned means is reported as a flag, not an error.
    """
    points = tuple(_as_scaling_point(r) for r in results)
    finite = [p for p in points if math.isfinite(p.lambda_value) and p.lambda_value > 0]
    distinct = len({round(p.lambda_value, 12) for p in points})
    if distinct < 2:
        raise ConfigError("scaling curve needs at least 2 distinct lambda values")
    lams, means, stds, counts = [], [], [], []
    for p in sorted(finite, key=lambda q: q.lambda_value):
        if lams and abs(p.lambda_value - lams[-1][0]) <= rtol * max(1.0, lams[-1][0]):
            lams[-1].append(p.lambda_value)
            means[-1].append(p.t_r_over_T)
        else:
            lams.append([p.lambda_value])
            means.append([p.t_r_over_T])
    lam_arr = np.array([np.mean(g) for g in lams])
    f_mean = np.array([np.mean(g) for g in means])
    f_std = np.array([np.std(g) for g in means])
    counts = np.array([len(g) for g in means])
    mono = bool(np.all(np.diff(f_mean) <= 2.0 * np.maximum(f_std[:-1], f_std[1:]) + 1e-12))
    return ScalingCurve(lambda_values=lam_arr, f_mean=f_mean, f_std=f_std,
                        counts=counts, monotone=mono, points=points)


def estimate_lambda_star(curve, epsilon_plateau=PLATEAU_TOLERANCE):
    """Crossover lambda* where f(lambda) settles onto the 0.5 plateau.

    The plateau is the maximal suffix of bins staying within
    ``epsilon_plateau`` of 0.5. lambda* is where the line through the
    last two pre-plateau bins crosses f = 0.5 (linear interpolation of
    the descending branch), so a piecewise-linear curve
    f = max(0.5, 1 - a*lambda) yields exactly 0.5/a.
    """
    lam = np.asarray(curve.lambda_values, dtype=float)
    f = np.asarray(curve.f_mean, dtype=float)
    std = np.asarray(curve.f_std, dtype=float)
    if len(lam) < 3:
        raise ConfigError("lambda* estimation needs at least 3 bins")
    onto = np.abs(f - 0.5) <= epsilon_plateau
    start = len(f)
    while start > 0 and onto[start - 1]:
        start -= 1
    if start == len(f):
        raise NumericalError(
            "scaling curve never enters the 0.5 plateau "
            f"(last bin f = {f[-1]:.3f}); extend the lambda range"
        )
    if start < 2:
        raise NumericalError(
            "scaling curve has fewer than 2 bins above the plateau; "
            "sample smaller lambda"
        )
    la, lb = lam[start - 2], lam[start - 1]
    fa, fb = f[start - 2], f[start - 1]
    if fb >= fa:
        raise NumericalError(
            "descending branch not resolved before the plateau "
            f"(f({la:.3g}) = {fa:.3f} <= f({lb:.3g}) = {fb:.3f})"
        )
    slope = (fb - fa) / (lb - la)
    lam_star = lb + (0.5 - fb) / slope
    unc = math.hypot(std[start - 2], std[start - 1]) / abs(slope)
    if lam_star < 0:
        raise NumericalError(f"lambda* extrapolated to {lam_star:.3g} < 0")
    return LambdaStarEstimate(value=float(lam_star), uncertainty=float(unc),
                              n_plateau_bins=len(f) - start)


def classify_regime(epsilon, delta_x_c, crossover=REGIME_CROSSOVER):
    """Tag a driving strength against the quantum crossover scale."""
    return "perturbative" if epsilon < crossover * delta_x_c else "nonperturbative"


def fit_gamma(times, p_values, saturation_level=None, participating_count=None,
              upper=0.8, saturation_factor=3.0, min_points=8,
              epsilon=None, delta_x_c=None):
    """Least-squares exponential rate over the window sat*3 < P < 0.8.

    ``saturation_level`` defaults to the inverse of
    ``participating_count`` (the number of levels the state occupies);
    with neither given the floor is taken as zero. The fit uses the
    first contiguous run of in-window samples and requires at least
    ``min_points`` of them.
    """
    times = np.asarray(times, dtype=float)
    p = np.asarray(p_values, dtype=float)
    if saturation_level is None:
        saturation_level = 0.0 if participating_count is None else 1.0 / participating_count
    lo = saturation_factor * saturation_level
    ok = (p < upper) & (p > lo)
    idx = np.flatnonzero(ok)
    if len(idx) == 0:
        raise NumericalError(
            f"no samples inside the fit window ({lo:.3g}, {upper}); "
            "trace has not decayed"
        )
    breaks = np.flatnonzero(np.diff(idx) > 1)
    stop = idx[breaks[0]] + 1 if len(breaks) else idx[-1] + 1
    run = idx[idx < stop]
    if len(run) < min_points:
        raise NumericalError(
            f"only {len(run)} samples in the fit window; need >= {min_points}"
        )
    t_fit = times[run]
    log_p = np.log(p[run])
    slope, intercept = np.polyfit(t_fit, log_p, 1)
    gamma = -float(slope)
    if gamma < 0:
        raise NumericalError(
            f"fit window is not decaying (gamma = {gamma:.3g} < 0)"
        )
    resid = log_p - (slope * t_fit + intercept)
    regime = None
    if epsilon is not None and delta_x_c is not None:
        regime = classify_regime(epsilon, delta_x_c)
    return DecayFit(
        gamma=gamma,
        fit_window=(float(t_fit[0]), float(t_fit[-1])),
        residual=float(np.sqrt(np.mean(resid ** 2))),
        n_points=len(run),
        saturation=float(saturation_level),
        regime=regime,
    )


def echo_condition(psi, pair, period):
    """Evaluate P_SR(T/2) < P_LE(T/2), the criterion for a visible echo.

    Returns (p_sr_half, p_le_half, satisfied). When the forward decay
    at the reversal time already exceeds the fidelity between the two
    branches, the compensation cannot raise the return probability and
    t_r collapses to T/2.
    """
    half = 0.5 * period
    p_sr = float(survival_trace(pair, psi, [half])[0])
    p_le = float(fidelity_trace(pair, psi, [half])[0])
    return p_sr, p_le, bool(p_sr < p_le)
