"""Economic potential over a discount-rate grid and the mean IRR derived from it.

For each month a population of candidate systems is priced at every grid
rate. The share with positive NPV, ``theta(r)``, falls with ``r``; the drop
between neighbouring grid rates is the probability mass of IRRs in that cell,
and the mean IRR is the mass-weighted sum of lower cell edges.
"""

from __future__ import annotations

import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Mapping, NamedTuple, Sequence

import numpy as np

from .cashflow import CashFlowProfile, build_profile, npv
from .sampling import DEFAULT_SPECS, ParameterSpec, Population, SystemSample, sample_population
from .timeseries import MonthIndex, MonthlyTimeSeries, month_range

CHUNK_SIZE = 25_000
CAPTURED_MASS_WARN = 0.99


class InvariantError(RuntimeError):
    """An internal consistency check failed (distinct from bad input)."""


class IrrEscapeWarning(UserWarning):
    """Part of the IRR distribution lies outside the discount grid."""


@dataclass(frozen=True)
class DiscountGrid:
    r_min: float = -0.10
    r_max: float = 0.15
    step: float = 0.005

    def __post_init__(self):
        if not self.r_min < self.r_max:
            raise ValueError(f"grid needs r_min < r_max, got {self.r_min}, {self.r_max}")
        if not self.step > 0:
            raise ValueError(f"grid step must be positive, got {self.step}")
        if self.r_min <= -1:
            raise ValueError("grid rates must exceed -1")
        ratio = (self.r_max - self.r_min) / self.step
        if abs(ratio - round(ratio)) > 1e-9:
            raise ValueError(f"grid span {self.r_max - self.r_min} is not a multiple of step {self.step}")

    @property
    def n_cells(self) -> int:
        return round((self.r_max - self.r_min) / self.step)

    @property
    def rates(self) -> np.ndarray:
        return self.r_min + self.step * np.arange(self.n_cells + 1)

    def refined(self, factor: int = 2) -> "DiscountGrid":
        return DiscountGrid(self.r_min, self.r_max, self.step / factor)

    @classmethod
    def parse(cls, text: str) -> "DiscountGrid":
        """``"rmin,rmax,step"`` as used on the command line."""
        parts = text.split(",")
        if len(parts) != 3:
            raise ValueError(f"grid must be 'rmin,rmax,step', got {text!r}")
        return cls(*(float(p) for p in parts))


@dataclass(frozen=True)
class EconomicPotentialTable:
    """Positive-NPV share per grid rate for one month.

    ``counts`` holds the integer number of accepted systems per rate so that
    tables from disjoint sample chunks combine exactly.
    """

    grid: DiscountGrid
    counts: np.ndarray
    n_samples: int
    month: MonthIndex | None = None

    @property
    def theta(self) -> np.ndarray:
        return self.counts / self.n_samples

    def merge(self, other: "EconomicPotentialTable") -> "EconomicPotentialTable":
        if other.grid != self.grid or other.month != self.month:
            raise ValueError("can only merge tables of the same month and grid")
        return EconomicPotentialTable(self.grid, self.counts + other.counts, self.n_samples + other.n_samples, self.month)


class MeanIrr(NamedTuple):
    value: float
    captured_mass: float


def _as_profile(samples) -> CashFlowProfile:
    if isinstance(samples, CashFlowProfile):
        return samples
    if isinstance(samples, SystemSample):
        samples = Population.from_samples([samples])
    elif not isinstance(samples, Population):
        samples = Population.from_samples(list(samples))
    return build_profile(samples)


def _check_monotone(counts: np.ndarray, month) -> None:
    if np.any(np.diff(counts) > 0):
        k = int(np.argmax(np.diff(counts) > 0))
        raise InvariantError(f"economic potential increases with discount rate at grid cell {k} ({month})")


def economic_potential(samples, grid: DiscountGrid = DiscountGrid(), month: MonthIndex | None = None) -> EconomicPotentialTable:
    """Share of systems with NPV > 0 (NPV == 0 counts as rejected) at every grid rate.

    ``samples`` may be a Population, a sequence of SystemSamples, or a
    precomputed CashFlowProfile.
    """
    profile = _as_profile(samples)
    n = len(profile)
    if n == 0:
        raise ValueError("empty sample set")
    counts = np.count_nonzero(np.atleast_2d(npv(profile, grid.rates)) > 0, axis=0)
    _check_monotone(counts, month)
    return EconomicPotentialTable(grid, counts.astype(np.int64), n, month)


def irr_density(table: EconomicPotentialTable) -> tuple[np.ndarray, np.ndarray]:
    """Lower cell edges and the IRR probability mass in each cell."""
    theta = table.theta
    return table.grid.rates[:-1], theta[:-1] - theta[1:]


def mean_irr(table: EconomicPotentialTable) -> MeanIrr:
    """Mass-weighted mean of lower cell edges, with the share of IRRs inside the grid."""
    rates, mass = irr_density(table)
    captured = float(table.theta[0] - table.theta[-1])
    if captured < CAPTURED_MASS_WARN:
        where = f" in {table.month}" if table.month is not None else ""
        warnings.warn(
            f"only {captured:.3f} of the IRR mass lies inside the grid{where}", IrrEscapeWarning, stacklevel=2
        )
    return MeanIrr(float(np.sum(rates * mass)), captured)


def month_potential(
    month: MonthIndex,
    inputs: Mapping[str, MonthlyTimeSeries],
    specs: Sequence[ParameterSpec],
    n_samples: int,
    seed: int,
    grid: DiscountGrid,
    chunk_size: int = CHUNK_SIZE,
) -> EconomicPotentialTable:
    """Sample ``n_samples`` systems for ``month`` in chunks and tabulate their economic potential."""
    table = None
    for start in range(0, n_samples, chunk_size):
        pop = sample_population(specs, month, inputs, min(chunk_size, n_samples - start), seed, start=start)
        part = economic_potential(pop, grid, month)
        table = part if table is None else table.merge(part)
    _check_monotone(table.counts, month)
    return table


def _month_task(args):
    return month_potential(*args)


@dataclass(frozen=True)
class MeanIrrResult:
    mean_irr: MonthlyTimeSeries
    captured_mass: MonthlyTimeSeries
    tables: tuple[EconomicPotentialTable, ...]


def mean_irr_series(
    inputs: Mapping[str, MonthlyTimeSeries],
    start: MonthIndex,
    end: MonthIndex,
    *,
    n_samples: int = 100_000,
    seed: int = 0,
    grid: DiscountGrid = DiscountGrid(),
    specs: Sequence[ParameterSpec] = DEFAULT_SPECS,
    workers: int = 1,
) -> MeanIrrResult:
    """Mean IRR for every month in ``start..end``.

    Months are independent; ``workers > 1`` spreads them over processes
    without changing any result.
    """
    months = month_range(start, end)
    if not months:
        raise ValueError(f"empty month range {start}..{end}")
    tasks = [(m, inputs, tuple(specs), n_samples, seed, grid) for m in months]
    if workers > 1 and len(months) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            tables = list(pool.map(_month_task, tasks))
    else:
        tables = [_month_task(t) for t in tasks]
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", IrrEscapeWarning)
        stats = [mean_irr(t) for t in tables]
    escaped = [w for w in caught if issubclass(w.category, IrrEscapeWarning)]
    if escaped:
        warnings.warn(
            f"{len(escaped)} month(s) have less than {CAPTURED_MASS_WARN} of the IRR mass inside the grid",
            IrrEscapeWarning,
            stacklevel=2,
        )
    return MeanIrrResult(
        MonthlyTimeSeries(start, [s.value for s in stats], "fraction", "mean_irr"),
        MonthlyTimeSeries(start, [s.captured_mass for s in stats], "fraction", "captured_mass"),
        tuple(tables),
    )

