"""Scenario definition and loading of the input data directory."""

from __future__ import annotations

from dataclasses import asdict, dataclass, field, fields
from pathlib import Path
from typing import Sequence

from . import timeseries as ts
from .irr import DiscountGrid, MeanIrrResult, mean_irr_series
from .sampling import DEFAULT_SPECS, ParameterSpec
from .timeseries import MonthIndex, MonthlyTimeSeries
from .uptake import BehavioralParams

# name -> (file name, unit, may hold coarse anchors to interpolate)
INPUT_FILES = {
    "feed_in_tariff": ("feed_in_tariff.csv", "EUR/kWh", False),
    "fit_self_consumption": ("fit_self_consumption.csv", "EUR/kWh", False),
    "system_cost": ("system_cost.csv", "EUR/kWp", True),
    "retail_price": ("retail_price.csv", "EUR/kWh", False),
    "bond_yield": ("bond_yield.csv", "fraction", False),
    "observed_deployment": ("observed_deployment.csv", "count", False),
}


class MissingInputError(ts.SeriesError):
    def __init__(self, path: Path):
        super().__init__(f"missing input file: {path}")
        self.path = path


def bundled_data_dir() -> Path:
    """Directory of the approximate German 2006-2014 dataset shipped with the package."""
    return Path(__file__).parent / "data" / "germany"


@dataclass(frozen=True)
class ScenarioInputs:
    feed_in_tariff: MonthlyTimeSeries
    fit_self_consumption: MonthlyTimeSeries
    system_cost: MonthlyTimeSeries
    retail_price: MonthlyTimeSeries
    bond_yield: MonthlyTimeSeries
    observed_deployment: MonthlyTimeSeries

    @property
    def start(self) -> MonthIndex:
        return self.feed_in_tariff.start

    @property
    def end(self) -> MonthIndex:
        return self.feed_in_tariff.end

    def as_mapping(self) -> dict[str, MonthlyTimeSeries]:
        return {f.name: getattr(self, f.name) for f in fields(self)}

    def window(self, start: MonthIndex, end: MonthIndex) -> "ScenarioInputs":
        return ScenarioInputs(**{k: s.window(start, end) for k, s in self.as_mapping().items()})

    @classmethod
    def aligned(cls, start: MonthIndex | None = None, end: MonthIndex | None = None, **series) -> "ScenarioInputs":
        """Intersect the series' ranges, then narrow to ``start..end`` if given."""
        names = list(series)
        (lo, hi), aligned = ts.align(series[n] for n in names)
        start = lo if start is None else start
        end = hi if end is None else end
        if start < lo or end > hi or start > end:
            raise ts.AlignmentError(f"scenario range {start}..{end} not covered by inputs (common range {lo}..{hi})")
        return cls(**{n: s.window(start, end) for n, s in zip(names, aligned)})


def load_inputs(data_dir, start: MonthIndex | None = None, end: MonthIndex | None = None) -> ScenarioInputs:
    data_dir = Path(data_dir)
    if not data_dir.is_dir():
        raise MissingInputError(data_dir)
    series = {}
    for name, (fname, unit, coarse) in INPUT_FILES.items():
        path = data_dir / fname
        if not path.is_file():
            raise MissingInputError(path)
        if coarse:
            anchors = ts.load_anchors(path, unit)
            if len(anchors) == 1:
                series[name] = MonthlyTimeSeries(anchors[0][0], [anchors[0][1]], unit, name)
            else:
                series[name] = ts.interpolate_to_monthly(anchors, unit, name)
        else:
            series[name] = ts.load_series(path, unit)
    return ScenarioInputs.aligned(start, end, **series)


@dataclass(frozen=True)
class ScenarioConfig:
    data_dir: Path = field(default_factory=bundled_data_dir)
    start: MonthIndex | None = None
    end: MonthIndex | None = None
    n_samples: int = 100_000
    seed: int = 0
    grid: DiscountGrid = DiscountGrid()
    params: BehavioralParams = BehavioralParams()
    specs: Sequence[ParameterSpec] = DEFAULT_SPECS
    out_dir: Path = Path("out")
    workers: int = 1

    def __post_init__(self):
        if self.n_samples < 1:
            raise ValueError(f"n_samples must be >= 1, got {self.n_samples}")
        if self.start is not None and self.end is not None and self.start > self.end:
            raise ValueError(f"start {self.start} after end {self.end}")
        if self.workers < 1:
            raise ValueError("workers must be >= 1")

    def to_manifest(self) -> dict:
        """Every effective setting as JSON-ready data (``workers`` excluded: it never changes results)."""
        return {
            "data_dir": str(self.data_dir),
            "start": None if self.start is None else str(self.start),
            "end": None if self.end is None else str(self.end),
            "n_samples": self.n_samples,
            "seed": self.seed,
            "grid": asdict(self.grid),
            "params": asdict(self.params),
            "specs": [asdict(s) for s in self.specs],
        }

    @classmethod
    def from_manifest(cls, data: dict, **overrides) -> "ScenarioConfig":
        kw = dict(
            data_dir=Path(data["data_dir"]),
            start=None if data.get("start") is None else MonthIndex.parse(data["start"]),
            end=None if data.get("end") is None else MonthIndex.parse(data["end"]),
            n_samples=int(data["n_samples"]),
            seed=int(data["seed"]),
            grid=DiscountGrid(**data["grid"]),
            params=BehavioralParams(**data["params"]),
            specs=tuple(ParameterSpec(**s) for s in data["specs"]),
        )
        kw.update(overrides)
        return cls(**kw)

    def load(self) -> ScenarioInputs:
        return load_inputs(self.data_dir, self.start, self.end)


def compute_mean_irr(config: ScenarioConfig, inputs: ScenarioInputs) -> MeanIrrResult:
    return mean_irr_series(
        inputs.as_mapping(),
        inputs.start,
        inputs.end,
        n_samples=config.n_samples,
        seed=config.seed,
        grid=config.grid,
        specs=config.specs,
        workers=config.workers,
    )
