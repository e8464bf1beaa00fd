"""Project economics of a single PV system (or a vectorised population of them).

All functions accept either a :class:`~pvuptake.sampling.SystemSample` with
scalar fields or a :class:`~pvuptake.sampling.Population` with array fields;
numpy broadcasting does the rest.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

REFERENCE_SIZE_KWP = 10.0
SIZE_COST_EXPONENT = -0.063


def investment_cost(size_kwp, specific_cost):
    """Initial outlay in Euro: reference cost per kWp scaled up for small systems.

    >>> round(investment_cost(10.0, 2000.0), 6)
    20000.0
    """
    s = np.asarray(size_kwp, dtype=float)
    i0 = np.asarray(specific_cost, dtype=float)
    if np.any(s <= 0) or np.any(i0 <= 0):
        raise ValueError("system size and specific cost must be positive")
    out = s * i0 * (s / REFERENCE_SIZE_KWP) ** SIZE_COST_EXPONENT
    return out if out.ndim else float(out)


def annual_energy(sample, n):
    """kWh produced in operating year ``n`` (1-based); degradation already applies in year 1."""
    n_arr = np.asarray(n)
    if np.any(n_arr < 1) or np.any(n_arr > sample.lifetime_years):
        raise ValueError(f"year index must be in 1..{sample.lifetime_years}, got {n}")
    e = (
        sample.size_kwp
        * sample.inclination_factor
        * sample.performance_ratio
        * sample.irradiance
        * (1.0 - sample.degradation) ** n_arr
    )
    return e if np.ndim(e) else float(e)


def revenue_per_kwh(sample):
    """Average remuneration of one generated kWh.

    Feed-in pays ``tariff``; if that beats retail price plus the
    self-consumption bonus, everything is fed in. Otherwise the self-consumed
    share earns avoided retail cost plus the bonus.
    """
    f = np.asarray(sample.tariff, dtype=float)
    own = np.asarray(sample.retail_price, dtype=float) + np.asarray(sample.sc_tariff, dtype=float)
    sc = np.asarray(sample.self_consumption, dtype=float)
    # f*(1-sc) + own*sc, arranged to equal f exactly when own == f
    out = np.where(f > own, f, f + sc * (own - f))
    return out if out.ndim else float(out)


def positive_cash_flow(sample, energy):
    """Yearly revenue in Euro for ``energy`` kWh (scalar, per-year vector, or (N, T) array)."""
    if np.any(np.asarray(energy) < 0):
        raise ValueError("energy must be non-negative")
    rev = np.asarray(revenue_per_kwh(sample))
    # (N, T) energy for a population takes one revenue rate per row
    out = np.asarray(energy) * (rev[:, None] if np.ndim(energy) == 2 and rev.ndim == 1 else rev)
    return out if np.ndim(out) else float(out)


@dataclass(frozen=True)
class CashFlowProfile:
    """Initial outlay and net yearly flows for years ``1..T``.

    For a single system ``initial_outlay`` is a float and ``flows`` has shape
    ``(T,)``; for a population they have shapes ``(N,)`` and ``(N, T)``.
    """

    initial_outlay: np.ndarray | float
    flows: np.ndarray

    def __post_init__(self):
        if np.any(np.asarray(self.initial_outlay) < 0):
            raise ValueError("initial outlay must be >= 0")

    @property
    def lifetime(self) -> int:
        return self.flows.shape[-1]

    def __len__(self) -> int:
        return 1 if self.flows.ndim == 1 else self.flows.shape[0]


def build_profile(sample) -> CashFlowProfile:
    """Cash-flow profile: revenue from yearly energy minus a fixed O&M share of the outlay."""
    c0 = investment_cost(sample.size_kwp, sample.specific_cost)
    years = np.arange(1, sample.lifetime_years + 1)
    if np.ndim(sample.size_kwp) == 0:
        energy = annual_energy(sample, years)
        net = positive_cash_flow(sample, energy) - c0 * sample.om_share
        return CashFlowProfile(float(c0), np.asarray(net, dtype=float))
    base = (
        sample.size_kwp * sample.inclination_factor * sample.performance_ratio * sample.irradiance
    )
    energy = base[:, None] * (1.0 - sample.degradation[:, None]) ** years[None, :]
    net = positive_cash_flow(sample, energy) - (c0 * sample.om_share)[:, None]
    return CashFlowProfile(np.asarray(c0, dtype=float), net)


def discount_factors(rates, lifetime: int) -> np.ndarray:
    """``(1 + r)^-n`` with shape ``(lifetime, len(rates))``."""
    rates = np.atleast_1d(np.asarray(rates, dtype=float))
    if np.any(rates <= -1):
        raise ValueError("discount rate must exceed -1")
    years = np.arange(1, lifetime + 1, dtype=float)
    return (1.0 + rates[None, :]) ** -years[:, None]


def npv(profile: CashFlowProfile, r):
    """Net present value at rate(s) ``r``.

    Scalar ``r`` gives one value per system; an array of rates appends a
    trailing rate axis. Years are accumulated in a fixed order so the result
    does not depend on BLAS threading.
    """
    scalar_rate = np.ndim(r) == 0
    disc = discount_factors(r, profile.lifetime)
    flows = np.atleast_2d(profile.flows)
    total = -np.atleast_1d(np.asarray(profile.initial_outlay, dtype=float))[:, None] * np.ones(disc.shape[1])
    for n in range(profile.lifetime):
        total = total + flows[:, n, None] * disc[n][None, :]
    if profile.flows.ndim == 1:
        total = total[0]
        return float(total[0]) if scalar_rate else total
    return total[:, 0] if scalar_rate else total
