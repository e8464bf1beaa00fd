"""From mean IRR to modelled monthly deployment.

Two models share one utility series ``u = exp(kappa * (mean_irr - bond_yield))``:

* exponential: deployment proportional to ``u``;
* prospect: ``U(t) = u(t) - v(u(t+1) - u(t)) + v(u(t) - u(t-1))`` with the
  loss-averse value function ``v``, deployment proportional to ``max(U, 0)``.
  An imminent drop in utility makes waiting a loss and pulls installations
  forward; a drop just taken makes the current month look worse.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .timeseries import AlignmentError, MonthlyTimeSeries

MAX_EXPONENT = 50.0


@dataclass(frozen=True)
class BehavioralParams:
    kappa: float = 20.0
    alpha: float = 0.88
    lam: float = 2.25

    def __post_init__(self):
        if not self.kappa > 0:
            raise ValueError(f"kappa must be > 0, got {self.kappa}")
        if not 0 < self.alpha <= 1:
            raise ValueError(f"alpha must be in (0, 1], got {self.alpha}")
        if not self.lam >= 1:
            raise ValueError(f"lambda must be >= 1, got {self.lam}")


@dataclass(frozen=True)
class UptakeResult:
    risk_adjusted_irr: MonthlyTimeSeries
    utility: MonthlyTimeSeries
    prospect_utility: MonthlyTimeSeries
    deployment: MonthlyTimeSeries
    scale: float


def _require_aligned(a: MonthlyTimeSeries, b: MonthlyTimeSeries) -> None:
    if not a.same_range(b):
        raise AlignmentError(f"series ranges differ: {a.start}..{a.end} vs {b.start}..{b.end}")


def risk_adjusted_irr(mean_irr: MonthlyTimeSeries, bond_yield: MonthlyTimeSeries) -> MonthlyTimeSeries:
    _require_aligned(mean_irr, bond_yield)
    return mean_irr.with_values(mean_irr.values - bond_yield.values, "fraction", "risk_adjusted_irr")


def exp_utility(pi: MonthlyTimeSeries, kappa: float) -> MonthlyTimeSeries:
    if not kappa > 0:
        raise ValueError(f"kappa must be > 0, got {kappa}")
    exponent = kappa * pi.values
    if np.any(np.abs(exponent) > MAX_EXPONENT):
        raise ValueError(f"|kappa * pi| exceeds {MAX_EXPONENT}; check units of the IRR inputs")
    return pi.with_values(np.exp(exponent), "1", "utility")


def value_function(x, params: BehavioralParams = BehavioralParams()):
    """Prospect-theory value of a gain (x > 0) or loss (x <= 0); works elementwise."""
    x = np.asarray(x, dtype=float)
    mag = np.abs(x) ** params.alpha
    out = np.where(x > 0, mag, np.where(x < 0, -params.lam * mag, 0.0))
    return out if out.ndim else float(out)


def utility_changes(u: MonthlyTimeSeries) -> tuple[np.ndarray, np.ndarray]:
    """Forward and backward one-month changes; zero where the neighbour is out of range."""
    diff = np.diff(u.values)
    forward = np.append(diff, 0.0)
    backward = np.insert(diff, 0, 0.0)
    return forward, backward


def prospect_utility(u: MonthlyTimeSeries, params: BehavioralParams = BehavioralParams()) -> MonthlyTimeSeries:
    if len(u) < 2:
        raise ValueError("prospect utility needs at least two months")
    forward, backward = utility_changes(u)
    values = u.values - value_function(forward, params) + value_function(backward, params)
    return u.with_values(values, "1", "prospect_utility")


def deployment(utility: MonthlyTimeSeries, scale: float, clamp: bool) -> MonthlyTimeSeries:
    """``scale * utility``, with non-positive months set to zero when ``clamp``."""
    if not scale > 0:
        raise ValueError(f"scale must be > 0, got {scale}")
    values = utility.values
    if clamp:
        values = np.where(values > 0, values, 0.0)
    return utility.with_values(scale * values, "count", "d_model")


def positive_part(utility: MonthlyTimeSeries, clamp: bool) -> np.ndarray:
    return np.where(utility.values > 0, utility.values, 0.0) if clamp else utility.values
