"""Monthly time series: month arithmetic, CSV ingestion, interpolation and alignment.

Every input of the uptake model (tariffs, system cost, retail price, bond
yield, observed installations) is a gap-free series with one value per
calendar month. Files follow a two-column layout::

    month,value
    2006-01,0.518
    2006-02,0.518

An optional first line ``# unit: EUR/kWh`` declares the unit; when present it
must agree with the unit the caller expects.
"""

from __future__ import annotations

import csv
import math
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

UNITS = ("EUR/kWh", "EUR/kWp", "fraction", "count", "1")

_MONTH_RE = re.compile(r"^(\d{4})-(\d{2})$")
_UNIT_RE = re.compile(r"^#\s*unit\s*:\s*(\S+)\s*$")


class SeriesError(ValueError):
    """Base class for malformed or inconsistent series input."""


class SeriesParseError(SeriesError):
    pass


class GapError(SeriesError):
    def __init__(self, message: str, missing: "MonthIndex"):
        super().__init__(message)
        self.missing = missing


class DuplicateMonthError(SeriesError):
    pass


class EmptySeriesError(SeriesError):
    pass


class UnitMismatchError(SeriesError):
    pass


class AlignmentError(SeriesError):
    pass


@dataclass(frozen=True, order=True)
class MonthIndex:
    """A calendar month. Ordered, hashable, and printed as ``YYYY-MM``."""

    year: int
    month: int

    def __post_init__(self):
        if not 1 <= self.month <= 12:
            raise SeriesParseError(f"month out of range: {self.year}-{self.month:02d}")

    @classmethod
    def parse(cls, text: str) -> "MonthIndex":
        m = _MONTH_RE.match(text.strip())
        if m is None:
            raise SeriesParseError(f"not a YYYY-MM month: {text!r}")
        return cls(int(m.group(1)), int(m.group(2)))

    @classmethod
    def from_ordinal(cls, ordinal: int) -> "MonthIndex":
        year, month0 = divmod(ordinal, 12)
        return cls(year, month0 + 1)

    @property
    def ordinal(self) -> int:
        """Months since year 0, January."""
        return self.year * 12 + self.month - 1

    def __add__(self, months: int) -> "MonthIndex":
        if not isinstance(months, (int, np.integer)):
            return NotImplemented
        return MonthIndex.from_ordinal(self.ordinal + int(months))

    def __sub__(self, other):
        if isinstance(other, MonthIndex):
            return self.ordinal - other.ordinal
        if isinstance(other, (int, np.integer)):
            return MonthIndex.from_ordinal(self.ordinal - int(other))
        return NotImplemented

    def __str__(self) -> str:
        return f"{self.year:04d}-{self.month:02d}"


def month_range(start: MonthIndex, end: MonthIndex) -> list[MonthIndex]:
    """Inclusive list of months from ``start`` to ``end``."""
    return [start + i for i in range(end - start + 1)]


@dataclass(frozen=True)
class MonthlyTimeSeries:
    """Values for a contiguous run of months; ``values[i]`` belongs to ``start + i``."""

    start: MonthIndex
    values: np.ndarray
    unit: str = "1"
    name: str = field(default="", compare=False)

    def __post_init__(self):
        values = np.array(self.values, dtype=float)
        if values.ndim != 1 or values.size == 0:
            raise EmptySeriesError("series needs at least one value")
        if not np.all(np.isfinite(values)):
            raise SeriesError(f"series {self.name!r} contains non-finite values")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    def __len__(self) -> int:
        return self.values.size

    @property
    def end(self) -> MonthIndex:
        return self.start + (len(self) - 1)

    @property
    def months(self) -> list[MonthIndex]:
        return month_range(self.start, self.end)

    def covers(self, month: MonthIndex) -> bool:
        return self.start <= month <= self.end

    def __getitem__(self, month: MonthIndex) -> float:
        if not self.covers(month):
            raise KeyError(f"{month} outside {self.start}..{self.end}")
        return float(self.values[month - self.start])

    def window(self, start: MonthIndex, end: MonthIndex) -> "MonthlyTimeSeries":
        """Restriction to ``start..end`` (inclusive), which must lie inside the series."""
        if not (self.covers(start) and self.covers(end) and start <= end):
            raise AlignmentError(
                f"window {start}..{end} not inside {self.name or 'series'} {self.start}..{self.end}"
            )
        i0 = start - self.start
        return MonthlyTimeSeries(start, self.values[i0 : i0 + (end - start) + 1], self.unit, self.name)

    def with_values(self, values, unit: str | None = None, name: str | None = None) -> "MonthlyTimeSeries":
        return MonthlyTimeSeries(
            self.start, values, self.unit if unit is None else unit, self.name if name is None else name
        )

    def same_range(self, other: "MonthlyTimeSeries") -> bool:
        return self.start == other.start and len(self) == len(other)


def _read_rows(path: Path, expected_unit: str) -> tuple[list[tuple[int, MonthIndex, float]], str]:
    text = path.read_text(encoding="utf-8")
    lines = text.splitlines()
    unit = expected_unit
    if lines and lines[0].startswith("#"):
        m = _UNIT_RE.match(lines[0])
        if m is None:
            raise SeriesParseError(f"{path}: line 1: unrecognised comment {lines[0]!r}")
        unit = m.group(1)
        if unit != expected_unit:
            raise UnitMismatchError(f"{path}: declared unit {unit!r}, expected {expected_unit!r}")
        offset = 1
        lines = lines[1:]
    else:
        offset = 0

    reader = csv.reader(lines)
    header = next(reader, None)
    if header is None:
        raise EmptySeriesError(f"{path}: empty file")
    if [h.strip() for h in header] != ["month", "value"]:
        raise SeriesParseError(f"{path}: line {offset + 1}: expected header 'month,value', got {','.join(header)!r}")

    rows = []
    for lineno, row in enumerate(reader, start=offset + 2):
        if not row or all(not c.strip() for c in row):
            continue
        if len(row) != 2:
            raise SeriesParseError(f"{path}: line {lineno}: expected 2 fields, got {len(row)}")
        try:
            month = MonthIndex.parse(row[0])
        except SeriesParseError as exc:
            raise SeriesParseError(f"{path}: line {lineno}: {exc}") from None
        try:
            value = float(row[1])
        except ValueError:
            raise SeriesParseError(f"{path}: line {lineno}: unparsable value {row[1]!r}") from None
        if not math.isfinite(value):
            raise SeriesParseError(f"{path}: line {lineno}: non-finite value {row[1]!r}")
        rows.append((lineno, month, value))
    if not rows:
        raise EmptySeriesError(f"{path}: no data rows")

    rows.sort(key=lambda r: r[1])
    for (_, prev, _), (lineno, cur, _) in zip(rows, rows[1:]):
        if cur == prev:
            raise DuplicateMonthError(f"{path}: line {lineno}: duplicate month {cur}")
    return rows, unit


def load_series(path, expected_unit: str) -> MonthlyTimeSeries:
    """Read a monthly CSV file into a gap-free series.

    Raises a :class:`SeriesError` subclass naming the offending row for
    gaps, duplicates, unparsable values and empty files.
    """
    path = Path(path)
    rows, unit = _read_rows(path, expected_unit)
    for (_, prev, _), (lineno, cur, _) in zip(rows, rows[1:]):
        if cur - prev != 1:
            missing = prev + 1
            raise GapError(f"{path}: line {lineno}: gap, month {missing} missing before {cur}", missing)
    return MonthlyTimeSeries(rows[0][1], [r[2] for r in rows], unit, path.stem)


def load_anchors(path, expected_unit: str) -> list[tuple[MonthIndex, float]]:
    """Read a coarse (e.g. quarterly) CSV file as sorted anchor points."""
    rows, _ = _read_rows(Path(path), expected_unit)
    return [(m, v) for _, m, v in rows]


def write_series(series: MonthlyTimeSeries, path) -> None:
    """Write ``series`` in the ``month,value`` layout with 17 significant digits."""
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(f"# unit: {series.unit}\n")
        fh.write("month,value\n")
        for month, value in zip(series.months, series.values):
            fh.write(f"{month},{value:.17g}\n")


def interpolate_to_monthly(
    coarse: Sequence[tuple[MonthIndex, float]], unit: str = "1", name: str = ""
) -> MonthlyTimeSeries:
    """Linear interpolation between anchor months; never extrapolates."""
    if len(coarse) < 2:
        raise SeriesError("interpolation needs at least 2 anchors")
    months = [m for m, _ in coarse]
    for a, b in zip(months, months[1:]):
        if not b > a:
            raise SeriesError(f"anchors not strictly increasing at {a} -> {b}")
    start = months[0]
    xp = np.array([m - start for m in months], dtype=float)
    fp = np.array([v for _, v in coarse], dtype=float)
    x = np.arange(int(xp[-1]) + 1, dtype=float)
    values = np.interp(x, xp, fp)
    # np.interp reproduces the anchor values exactly at the anchor abscissae.
    return MonthlyTimeSeries(start, values, unit, name)


def align(series: Iterable[MonthlyTimeSeries]) -> tuple[tuple[MonthIndex, MonthIndex], list[MonthlyTimeSeries]]:
    """Intersect the month ranges of ``series`` and restrict each series to it."""
    series = list(series)
    if not series:
        raise AlignmentError("nothing to align")
    start = max(s.start for s in series)
    end = min(s.end for s in series)
    if start > end:
        spans = ", ".join(f"{s.name or '?'}[{s.start}..{s.end}]" for s in series)
        raise AlignmentError(f"empty intersection of {spans}")
    return (start, end), [s.window(start, end) for s in series]
