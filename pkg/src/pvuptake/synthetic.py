"""Small hand-made scenarios for tests and demos."""

from __future__ import annotations

from typing import Sequence

import numpy as np

from .sampling import DEFAULT_SPECS, ParameterSpec, pert_mean
from .scenario import ScenarioInputs
from .timeseries import MonthIndex, MonthlyTimeSeries


def _series(start, values, unit, name):
    return MonthlyTimeSeries(start, np.asarray(values, dtype=float), unit, name)


def step_inputs(
    start: MonthIndex = MonthIndex(2010, 1),
    tariffs: Sequence[float] = (0.30,) * 12,
    *,
    sc_tariff: float = 0.0,
    system_cost: float = 2500.0,
    retail_price: float = 0.25,
    bond_yield: float | Sequence[float] = 0.02,
    observed: Sequence[float] | None = None,
) -> ScenarioInputs:
    """Inputs that are constant except for the given tariff path."""
    n = len(tariffs)
    bonds = np.broadcast_to(np.asarray(bond_yield, dtype=float), (n,))
    obs = np.full(n, 1000.0) if observed is None else observed
    return ScenarioInputs(
        feed_in_tariff=_series(start, tariffs, "EUR/kWh", "feed_in_tariff"),
        fit_self_consumption=_series(start, [sc_tariff] * n, "EUR/kWh", "fit_self_consumption"),
        system_cost=_series(start, [system_cost] * n, "EUR/kWp", "system_cost"),
        retail_price=_series(start, [retail_price] * n, "EUR/kWh", "retail_price"),
        bond_yield=_series(start, bonds, "fraction", "bond_yield"),
        observed_deployment=_series(start, obs, "count", "observed_deployment"),
    )


def single_cut_inputs(
    n_months: int = 12, cut_at: int = 6, before: float = 0.30, after: float = 0.22, **kw
) -> ScenarioInputs:
    """One tariff step down at month index ``cut_at``."""
    tariffs = [before] * cut_at + [after] * (n_months - cut_at)
    return step_inputs(tariffs=tariffs, **kw)


def point_specs(base: Sequence[ParameterSpec] = DEFAULT_SPECS) -> tuple[ParameterSpec, ...]:
    """Degenerate specs: every random input fixed at a representative value.

    Beta inputs sit at their mean, size at the middle of its range, and
    series-based inputs at the series value (zero spread).
    """
    out = []
    for s in base:
        if s.kind == "beta_mmm":
            out.append(ParameterSpec(s.name, "constant", pert_mean(s.p1, s.p2, s.p3)))
        elif s.kind == "uniform":
            out.append(ParameterSpec(s.name, "constant", 0.5 * (s.p1 + s.p2)))
        elif s.kind == "normal":
            out.append(ParameterSpec(s.name, "constant", s.p1))
        elif s.kind == "normal_rel":
            out.append(ParameterSpec(s.name, "normal_rel", 0.0))
        else:
            out.append(s)
    return tuple(out)
