"""Random input model for candidate rooftop PV systems.

Each month a population of possible systems is drawn from the parameter
distributions below (size, yield factors, costs, prices). Random numbers are
counter based: the draw for parameter ``p`` of sample ``i`` in month ``m`` is a
pure function of ``(seed, m, i, p)``, so any partition of the sample indices
across workers reproduces the same population.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, fields, replace
from pathlib import Path
from typing import Mapping, Sequence

import numpy as np
from scipy import special

from .timeseries import MonthIndex, MonthlyTimeSeries

LIFETIME_YEARS = 20

KINDS = ("constant", "uniform", "normal", "normal_rel", "beta_mmm")

# Parameters whose normal draws are centred on a monthly input series.
SERIES_FOR = {"specific_cost": "system_cost", "retail_price": "retail_price"}

_MASK64 = (1 << 64) - 1
_WORDS = 4  # uint64 outputs per Philox counter value


class SpecError(ValueError):
    pass


@dataclass(frozen=True)
class ParameterSpec:
    """One random input.

    ``kind`` selects how ``p1..p3`` are read:

    ========== ================================================
    constant   p1 = value
    uniform    p1 = min, p2 = max; support (min, max]
    normal     p1 = mean, p2 = sd; truncated at zero
    normal_rel p1 = sd as a fraction of the month's series value
    beta_mmm   p1 = min, p2 = mode, p3 = max (PERT beta)
    ========== ================================================
    """

    name: str
    kind: str
    p1: float
    p2: float = math.nan
    p3: float = math.nan

    def __post_init__(self):
        if self.kind not in KINDS:
            raise SpecError(f"{self.name}: unknown kind {self.kind!r}; expected one of {', '.join(KINDS)}")
        if self.kind == "uniform" and not self.p1 < self.p2:
            raise SpecError(f"{self.name}: uniform needs min < max, got {self.p1}, {self.p2}")
        if self.kind == "normal" and not self.p2 >= 0:
            raise SpecError(f"{self.name}: sd must be >= 0, got {self.p2}")
        if self.kind == "normal_rel":
            if not self.p1 >= 0:
                raise SpecError(f"{self.name}: relative sd must be >= 0, got {self.p1}")
            if self.name not in SERIES_FOR:
                raise SpecError(f"{self.name}: normal_rel only valid for {', '.join(SERIES_FOR)}")
        if self.kind == "beta_mmm" and not self.p1 <= self.p2 <= self.p3:
            raise SpecError(f"{self.name}: beta_mmm needs min <= mode <= max, got {self.p1}, {self.p2}, {self.p3}")

    @property
    def bounds(self) -> tuple[float, float]:
        """Support of the distribution (before any series scaling)."""
        if self.kind == "constant":
            return self.p1, self.p1
        if self.kind == "uniform":
            return self.p1, self.p2
        if self.kind == "beta_mmm":
            return self.p1, self.p3
        return 0.0, math.inf


# Table of input distributions for residential systems below 10 kWp.
DEFAULT_SPECS = (
    ParameterSpec("size_kwp", "uniform", 0.0, 10.0),
    ParameterSpec("specific_cost", "normal_rel", 0.10),
    ParameterSpec("performance_ratio", "beta_mmm", 0.75, 0.84, 0.90),
    ParameterSpec("self_consumption", "beta_mmm", 0.0, 0.05, 0.20),
    ParameterSpec("degradation", "beta_mmm", 0.0, 0.005, 0.02),
    ParameterSpec("inclination_factor", "beta_mmm", 0.25, 0.98, 1.00),
    ParameterSpec("irradiance", "beta_mmm", 1141.0, 1253.0, 1403.0),
    ParameterSpec("om_share", "normal", 0.015, 0.0015),
    ParameterSpec("retail_price", "normal_rel", 0.05),
)
PARAMETER_NAMES = tuple(s.name for s in DEFAULT_SPECS)


def load_parameter_specs(path, base: Sequence[ParameterSpec] = DEFAULT_SPECS) -> tuple[ParameterSpec, ...]:
    """Override rows of ``base`` from a ``name,kind,p1,p2,p3`` CSV file."""
    path = Path(path)
    specs = {s.name: s for s in base}
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None or [f.strip() for f in reader.fieldnames][:3] != ["name", "kind", "p1"]:
            raise SpecError(f"{path}: expected header 'name,kind,p1,p2,p3'")
        for lineno, row in enumerate(reader, start=2):
            name = row["name"].strip()
            if name not in specs:
                raise SpecError(f"{path}: line {lineno}: unknown parameter {name!r}")
            try:
                ps = [float(row[k]) if row.get(k) not in (None, "") else math.nan for k in ("p1", "p2", "p3")]
            except ValueError as exc:
                raise SpecError(f"{path}: line {lineno}: {exc}") from None
            try:
                specs[name] = ParameterSpec(name, row["kind"].strip(), *ps)
            except SpecError as exc:
                raise SpecError(f"{path}: line {lineno}: {exc}") from None
    return tuple(specs[n] for n in (s.name for s in base))


def pert_shape(lo: float, mode: float, hi: float) -> tuple[float, float]:
    """Beta shape parameters of the PERT distribution with shape constant 4."""
    width = hi - lo
    return 1.0 + 4.0 * (mode - lo) / width, 1.0 + 4.0 * (hi - mode) / width


def pert_mean(lo: float, mode: float, hi: float) -> float:
    return (lo + 4.0 * mode + hi) / 6.0


def sample_beta_mmm(lo, mode, hi, draw):
    """Transform unit-uniform ``draw`` (scalar or array in [0, 1)) to PERT-beta values."""
    if not lo <= mode <= hi:
        raise SpecError(f"beta_mmm needs min <= mode <= max, got {lo}, {mode}, {hi}")
    draw = np.asarray(draw, dtype=float)
    if hi == lo:
        out = np.full(draw.shape, float(lo))
    else:
        a, b = pert_shape(lo, mode, hi)
        # betaincinv returns NaN below ~1e-150; the quantile there is 0 to double precision
        draw = np.where(draw < 1e-100, 0.0, draw)
        out = lo + (hi - lo) * special.betaincinv(a, b, draw)
        out = np.clip(out, lo, hi)
    return out if out.ndim else float(out)


@dataclass(frozen=True)
class SystemSample:
    """One concrete candidate PV system. ``specific_cost`` is the 10 kWp reference cost."""

    size_kwp: float
    specific_cost: float
    performance_ratio: float
    self_consumption: float
    degradation: float
    inclination_factor: float
    irradiance: float
    om_share: float
    retail_price: float
    tariff: float
    sc_tariff: float
    lifetime_years: int = LIFETIME_YEARS


@dataclass(frozen=True)
class Population:
    """Struct-of-arrays view of ``n`` SystemSamples (same field names, 1-D arrays)."""

    size_kwp: np.ndarray
    specific_cost: np.ndarray
    performance_ratio: np.ndarray
    self_consumption: np.ndarray
    degradation: np.ndarray
    inclination_factor: np.ndarray
    irradiance: np.ndarray
    om_share: np.ndarray
    retail_price: np.ndarray
    tariff: np.ndarray
    sc_tariff: np.ndarray
    lifetime_years: int = LIFETIME_YEARS

    def __len__(self) -> int:
        return self.size_kwp.size

    def __getitem__(self, i: int) -> SystemSample:
        kw = {f.name: float(getattr(self, f.name)[i]) for f in fields(self) if f.name != "lifetime_years"}
        return SystemSample(lifetime_years=self.lifetime_years, **kw)

    def __iter__(self):
        return (self[i] for i in range(len(self)))

    @classmethod
    def from_samples(cls, samples: Sequence[SystemSample]) -> "Population":
        if not samples:
            raise ValueError("empty sample set")
        names = [f.name for f in fields(SystemSample) if f.name != "lifetime_years"]
        arrays = {n: np.array([getattr(s, n) for s in samples], dtype=float) for n in names}
        lifetimes = {s.lifetime_years for s in samples}
        if len(lifetimes) != 1:
            raise ValueError("samples disagree on lifetime")
        return cls(lifetime_years=lifetimes.pop(), **arrays)

    def concat(self, other: "Population") -> "Population":
        kw = {
            f.name: np.concatenate([getattr(self, f.name), getattr(other, f.name)])
            for f in fields(self)
            if f.name != "lifetime_years"
        }
        return replace(self, **kw)


def _philox_words(seed: int, month: MonthIndex, param: int, indices: np.ndarray, attempt: int = 0) -> np.ndarray:
    """Raw uint64 words, shape (len(indices), 4), for contiguous sample ``indices``."""
    key = [seed & _MASK64, ((month.ordinal & 0xFFFFFFFF) << 16) | param]
    first = int(indices[0])
    # Philox increments its counter before each block: sample i always lands on
    # block i + 1 whatever chunk it is drawn in.
    gen = np.random.Philox(key=key, counter=[first, attempt, 0, 0])
    return gen.random_raw(_WORDS * indices.size).reshape(indices.size, _WORDS)


def _unit_uniform(words: np.ndarray) -> np.ndarray:
    """Uniform on [0, 1) with 53 random bits."""
    return (words >> np.uint64(11)).astype(float) * 2.0**-53


def _open_uniform(words: np.ndarray) -> np.ndarray:
    """Uniform on (0, 1), safe for the normal quantile function."""
    return ((words >> np.uint64(11)).astype(float) + 0.5) * 2.0**-53


def _truncated_normal(seed, month, param, indices, words, mean, sd):
    mean = np.broadcast_to(np.asarray(mean, dtype=float), indices.shape)
    if sd is None or np.all(np.asarray(sd) == 0):
        return np.maximum(mean.copy(), 0.0)
    sd = np.broadcast_to(np.asarray(sd, dtype=float), indices.shape)
    out = mean + sd * special.ndtri(_open_uniform(words[:, 0]))
    for w in range(1, _WORDS):
        neg = out < 0
        if not neg.any():
            return out
        out[neg] = mean[neg] + sd[neg] * special.ndtri(_open_uniform(words[neg, w]))
    attempt = 1
    while (neg := np.flatnonzero(out < 0)).size:
        for j in neg:
            extra = _philox_words(seed, month, param, indices[j : j + 1], attempt)[0]
            for word in extra:
                z = mean[j] + sd[j] * special.ndtri(_open_uniform(np.array([word]))[0])
                if z >= 0:
                    out[j] = z
                    break
        attempt += 1
    return out


def _draw(spec: ParameterSpec, param: int, seed: int, month: MonthIndex, indices: np.ndarray, centre: float | None):
    n = indices.size
    if spec.kind == "constant":
        return np.full(n, spec.p1)
    words = _philox_words(seed, month, param, indices)
    if spec.kind == "uniform":
        return spec.p2 - (spec.p2 - spec.p1) * _unit_uniform(words[:, 0])
    if spec.kind == "beta_mmm":
        return sample_beta_mmm(spec.p1, spec.p2, spec.p3, _unit_uniform(words[:, 0]))
    if spec.kind == "normal":
        return _truncated_normal(seed, month, param, indices, words, spec.p1, spec.p2)
    # normal_rel
    return _truncated_normal(seed, month, param, indices, words, centre, spec.p1 * centre)


def sample_population(
    specs: Sequence[ParameterSpec],
    month: MonthIndex,
    inputs: Mapping[str, MonthlyTimeSeries],
    n: int,
    seed: int,
    start: int = 0,
) -> Population:
    """Draw samples ``start .. start+n-1`` for ``month``.

    ``inputs`` must hold ``feed_in_tariff``, ``fit_self_consumption`` and any
    series referenced through ``SERIES_FOR`` (``system_cost``, ``retail_price``).
    """
    if n < 1:
        raise ValueError(f"need n >= 1 samples, got {n}")
    by_name = {s.name: s for s in specs}
    if set(by_name) != set(PARAMETER_NAMES):
        missing = set(PARAMETER_NAMES) - set(by_name)
        raise SpecError(f"parameter set incomplete, missing: {', '.join(sorted(missing))}")

    def month_value(key: str) -> float:
        series = inputs[key]
        if not series.covers(month):
            raise KeyError(f"{month} outside {key} coverage {series.start}..{series.end}")
        return series[month]

    indices = np.arange(start, start + n, dtype=np.uint64)
    drawn = {}
    for param, name in enumerate(PARAMETER_NAMES):
        spec = by_name[name]
        centre = month_value(SERIES_FOR[name]) if name in SERIES_FOR else None
        drawn[name] = _draw(spec, param, seed, month, indices, centre)

    return Population(
        tariff=np.full(n, month_value("feed_in_tariff")),
        sc_tariff=np.full(n, month_value("fit_self_consumption")),
        **drawn,
    )
