"""Calibration, goodness of fit and parameter sweeps for the two uptake models."""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Sequence

import numpy as np
from scipy import stats

from .irr import MeanIrrResult
from .scenario import ScenarioConfig, ScenarioInputs, compute_mean_irr
from .timeseries import AlignmentError, MonthlyTimeSeries
from .uptake import (
    BehavioralParams,
    UptakeResult,
    deployment,
    exp_utility,
    positive_part,
    prospect_utility,
    risk_adjusted_irr,
)

SIGNIFICANCE_LEVEL = 0.001
SWEEP_PARAMETERS = {"alpha": "alpha", "lambda": "lam", "kappa": "kappa"}


class ZeroVarianceError(ValueError):
    pass


class CalibrationError(ValueError):
    pass


def calibrate_scale(utility: MonthlyTimeSeries, observed: MonthlyTimeSeries, clamp: bool) -> float:
    """Constant that makes total modelled deployment equal total observed deployment."""
    if not utility.same_range(observed):
        raise AlignmentError("utility and observed series must share a month range")
    total_u = float(np.sum(positive_part(utility, clamp)))
    total_obs = float(np.sum(observed.values))
    if not total_u > 0:
        raise CalibrationError("utility total is not positive; cannot calibrate")
    if not total_obs > 0:
        raise CalibrationError("observed total is not positive; cannot calibrate")
    return total_obs / total_u


def pearson(a: MonthlyTimeSeries, b: MonthlyTimeSeries) -> float:
    if not a.same_range(b):
        raise AlignmentError(f"series ranges differ: {a.start}..{a.end} vs {b.start}..{b.end}")
    if len(a) < 3:
        raise ValueError("pearson needs at least 3 points")
    x = a.values - a.values.mean()
    y = b.values - b.values.mean()
    sxx, syy = float(x @ x), float(y @ y)
    if sxx == 0 or syy == 0:
        which = a.name if sxx == 0 else b.name
        raise ZeroVarianceError(f"series {which or '?'} has zero variance; correlation undefined")
    r = float(x @ y) / math.sqrt(sxx * syy)
    return min(1.0, max(-1.0, r))


def p_value(r: float, n: int) -> float:
    """Two-sided p-value of the t-test on a Pearson coefficient with n - 2 dof."""
    if abs(r) >= 1.0:
        return 0.0
    t = r * math.sqrt((n - 2) / (1.0 - r * r))
    return float(2.0 * stats.t.sf(abs(t), n - 2))


@dataclass(frozen=True)
class FitReport:
    model: str
    scale: float
    pearson_r: float
    significant: bool
    total_modeled: float
    total_observed: float
    rmse: float = math.nan


def fit_report(model: str, modeled: MonthlyTimeSeries, observed: MonthlyTimeSeries, scale: float) -> FitReport:
    r = pearson(modeled, observed)
    resid = modeled.values - observed.values
    return FitReport(
        model=model,
        scale=scale,
        pearson_r=r,
        significant=p_value(r, len(observed)) < SIGNIFICANCE_LEVEL,
        total_modeled=float(np.sum(modeled.values)),
        total_observed=float(np.sum(observed.values)),
        rmse=float(np.sqrt(np.mean(resid * resid))),
    )


def exponential_model(pi: MonthlyTimeSeries, observed: MonthlyTimeSeries, params: BehavioralParams) -> UptakeResult:
    u = exp_utility(pi, params.kappa)
    scale = calibrate_scale(u, observed, clamp=False)
    return UptakeResult(pi, u, u, deployment(u, scale, clamp=False), scale)


def prospect_model(pi: MonthlyTimeSeries, observed: MonthlyTimeSeries, params: BehavioralParams) -> UptakeResult:
    u = exp_utility(pi, params.kappa)
    big_u = prospect_utility(u, params)
    scale = calibrate_scale(big_u, observed, clamp=True)
    return UptakeResult(pi, u, big_u, deployment(big_u, scale, clamp=True), scale)


@dataclass(frozen=True)
class ScenarioResult:
    mean_irr: MeanIrrResult
    inputs: ScenarioInputs
    exponential: UptakeResult
    prospect: UptakeResult
    reports: tuple[FitReport, FitReport]
    # Pearson r of the raw and risk-adjusted mean IRR against observed deployment
    feature_correlations: dict[str, float]


def fit_models(
    mean_irr: MeanIrrResult, inputs: ScenarioInputs, params: BehavioralParams = BehavioralParams()
) -> ScenarioResult:
    """Both uptake models on one shared mean-IRR series, calibrated and scored."""
    observed = inputs.observed_deployment
    pi = risk_adjusted_irr(mean_irr.mean_irr, inputs.bond_yield)
    exp_res = exponential_model(pi, observed, params)
    pro_res = prospect_model(pi, observed, params)
    reports = (
        fit_report("exponential", exp_res.deployment, observed, exp_res.scale),
        fit_report("prospect", pro_res.deployment, observed, pro_res.scale),
    )
    features = {
        "mean_irr": pearson(mean_irr.mean_irr, observed),
        "risk_adjusted_irr": pearson(pi, observed),
    }
    return ScenarioResult(mean_irr, inputs, exp_res, pro_res, reports, features)


def run_scenario(config: ScenarioConfig) -> ScenarioResult:
    inputs = config.load()
    return fit_models(compute_mean_irr(config, inputs), inputs, config.params)


@dataclass(frozen=True)
class SweepPoint:
    value: float
    deployment: MonthlyTimeSeries
    pearson_r: float


@dataclass(frozen=True)
class SweepResult:
    parameter: str
    points: tuple[SweepPoint, ...]


def sweep(
    parameter: str,
    values: Sequence[float],
    mean_irr: MonthlyTimeSeries,
    bond_yield: MonthlyTimeSeries,
    observed: MonthlyTimeSeries,
    base: BehavioralParams = BehavioralParams(),
) -> SweepResult:
    """Prospect model rerun and recalibrated for each value of ``parameter``.

    ``parameter`` is one of ``alpha``, ``lambda`` or ``kappa``; the mean-IRR
    series does not depend on any of them and is reused.
    """
    if parameter not in SWEEP_PARAMETERS:
        raise ValueError(f"unknown sweep parameter {parameter!r}; expected one of {', '.join(SWEEP_PARAMETERS)}")
    values = [float(v) for v in values]
    if not values:
        raise ValueError("no sweep values given")
    if any(b <= a for a, b in zip(values, values[1:])):
        raise ValueError("sweep values must be strictly increasing")
    pi = risk_adjusted_irr(mean_irr, bond_yield)
    points = []
    for v in values:
        params = replace(base, **{SWEEP_PARAMETERS[parameter]: v})
        res = prospect_model(pi, observed, params)
        try:
            r = pearson(res.deployment, observed)
        except ZeroVarianceError:
            r = math.nan
        points.append(SweepPoint(v, res.deployment, r))
    return SweepResult(parameter, tuple(points))


def sensitivity_sweep(
    config: ScenarioConfig, parameter: str, values: Sequence[float], mean_irr: MeanIrrResult | None = None
) -> SweepResult:
    inputs = config.load()
    if mean_irr is None:
        mean_irr = compute_mean_irr(config, inputs)
    return sweep(parameter, values, mean_irr.mean_irr, inputs.bond_yield, inputs.observed_deployment, config.params)
