"""Plot-ready CSV output and the run manifest.

Floats are written with 17 significant digits so files round-trip exactly
and identical runs give identical bytes.
"""

from __future__ import annotations

import json
from pathlib import Path

from .analysis import FitReport, ScenarioResult, SweepResult
from .irr import MeanIrrResult, irr_density
from .uptake import UptakeResult


def _f(x: float) -> str:
    return f"{x:.17g}"


def _write(path: Path, header: str, rows) -> Path:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(header + "\n")
        for row in rows:
            fh.write(",".join(row) + "\n")
    return path


def write_mean_irr(result: MeanIrrResult, path) -> Path:
    rows = (
        (str(m), _f(v), _f(c))
        for m, v, c in zip(result.mean_irr.months, result.mean_irr.values, result.captured_mass.values)
    )
    return _write(Path(path), "month,mean_irr,captured_mass", rows)


def write_irr_density(result: MeanIrrResult, path) -> Path:
    def rows():
        for table in result.tables:
            rates, mass = irr_density(table)
            for r, w in zip(rates, mass):
                yield str(table.month), _f(r), _f(w)

    return _write(Path(path), "month,r,mass", rows())


def write_uptake(res: UptakeResult, observed, path) -> Path:
    rows = (
        (str(m), _f(p), _f(u), _f(bu), _f(d), _f(o))
        for m, p, u, bu, d, o in zip(
            res.utility.months,
            res.risk_adjusted_irr.values,
            res.utility.values,
            res.prospect_utility.values,
            res.deployment.values,
            observed.values,
        )
    )
    return _write(Path(path), "month,pi,u,U,d_model,d_observed", rows)


def write_fit_report(reports: tuple[FitReport, ...], path) -> Path:
    rows = (
        (r.model, _f(r.scale), _f(r.pearson_r), str(r.significant).lower(), _f(r.total_modeled), _f(r.total_observed))
        for r in reports
    )
    return _write(Path(path), "model,scale,pearson_r,significant,total_modeled,total_observed", rows)


def write_correlations(result: ScenarioResult, path) -> Path:
    rows = [(name, _f(r)) for name, r in result.feature_correlations.items()]
    rows += [(f"{r.model}_model", _f(r.pearson_r)) for r in result.reports]
    return _write(Path(path), "feature,pearson_r", rows)


def write_sweep(result: SweepResult, path) -> Path:
    def rows():
        for point in result.points:
            for m, d in zip(point.deployment.months, point.deployment.values):
                yield _f(point.value), str(m), _f(d)

    return _write(Path(path), "param_value,month,d_model", rows())


def write_scenario(result: ScenarioResult, out_dir, density: bool = False) -> list[Path]:
    """mean_irr.csv, uptake.csv (prospect model), uptake_exponential.csv, fit_report.csv, correlations.csv."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    observed = result.inputs.observed_deployment
    paths = [
        write_mean_irr(result.mean_irr, out / "mean_irr.csv"),
        write_uptake(result.prospect, observed, out / "uptake.csv"),
        write_uptake(result.exponential, observed, out / "uptake_exponential.csv"),
        write_fit_report(result.reports, out / "fit_report.csv"),
        write_correlations(result, out / "correlations.csv"),
    ]
    if density:
        paths.append(write_irr_density(result.mean_irr, out / "irr_density.csv"))
    return paths


def write_manifest(manifest: dict, path) -> Path:
    path = Path(path)
    path.write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    return path


def read_manifest(path) -> dict:
    data = json.loads(Path(path).read_text(encoding="utf-8"))
    return data.get("config", data)
