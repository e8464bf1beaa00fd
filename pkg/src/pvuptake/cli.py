"""Command-line driver: ``pvuptake simulate | sweep | validate``.

Exit codes: 0 success, 1 input error, 2 internal invariant violation.
"""

from __future__ import annotations

import argparse
import os
import sys
import warnings
from dataclasses import replace
from pathlib import Path

from . import __version__
from .analysis import SWEEP_PARAMETERS, CalibrationError, ZeroVarianceError, run_scenario, sensitivity_sweep
from .export import read_manifest, write_manifest, write_scenario, write_sweep
from .irr import DiscountGrid, InvariantError
from .sampling import SpecError, load_parameter_specs
from .scenario import INPUT_FILES, ScenarioConfig, bundled_data_dir, load_inputs
from .timeseries import MonthIndex, SeriesError
from .uptake import BehavioralParams

DEFAULT_SAMPLES = 100_000

INPUT_ERRORS = (SeriesError, SpecError, CalibrationError, ZeroVarianceError, ValueError, OSError)


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    """Flag errors are input errors: exit 1, keeping 2 for invariant violations."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _month(text: str) -> MonthIndex:
    try:
        return MonthIndex.parse(text)
    except SeriesError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _grid(text: str) -> DiscountGrid:
    try:
        return DiscountGrid.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _values(text: str) -> list[float]:
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"unparsable value list {text!r}") from None


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--data", type=Path, help="input directory (default: bundled approximate German dataset)")
    p.add_argument("--out", type=Path, help="output directory (default: ./out)")
    p.add_argument("--start", type=_month, help="first month, YYYY-MM")
    p.add_argument("--end", type=_month, help="last month, YYYY-MM")
    p.add_argument("--samples", type=int, help=f"Monte Carlo samples per month (default {DEFAULT_SAMPLES})")
    p.add_argument("--seed", type=int, help="random seed (default 0)")
    p.add_argument("--kappa", type=float)
    p.add_argument("--alpha", type=float)
    p.add_argument("--lambda", dest="lam", type=float)
    p.add_argument("--grid", type=_grid, help="rmin,rmax,step (default -0.10,0.15,0.005)")
    p.add_argument("--params", type=Path, help="parameters.csv overriding the default input distributions")
    p.add_argument("--workers", type=int, default=1, help="processes for the Monte Carlo step; 0 = all cores")
    p.add_argument("--manifest", type=Path, help="replay the settings recorded in a manifest.json")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="pvuptake", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    sim = sub.add_parser("simulate", help="mean IRR, both uptake models, fit report")
    _add_common(sim)
    sim.add_argument("--export-density", action="store_true", help="also write irr_density.csv")

    sw = sub.add_parser("sweep", help="prospect model sensitivity to alpha, lambda or kappa")
    _add_common(sw)
    sw.add_argument("--param", required=True, help="one of: " + ", ".join(SWEEP_PARAMETERS))
    sw.add_argument("--values", required=True, type=_values, help="comma separated, strictly increasing")

    val = sub.add_parser("validate", help="check that all inputs load, align and cover the range")
    val.add_argument("--data", type=Path)
    val.add_argument("--start", type=_month)
    val.add_argument("--end", type=_month)
    return parser


def config_from_args(args) -> ScenarioConfig:
    if args.manifest is not None:
        base = ScenarioConfig.from_manifest(read_manifest(args.manifest))
    else:
        base = ScenarioConfig(data_dir=bundled_data_dir(), n_samples=DEFAULT_SAMPLES)
    kw = {}
    if args.data is not None:
        kw["data_dir"] = args.data
    if args.start is not None:
        kw["start"] = args.start
    if args.end is not None:
        kw["end"] = args.end
    if args.samples is not None:
        kw["n_samples"] = args.samples
    if args.seed is not None:
        kw["seed"] = args.seed
    if args.grid is not None:
        kw["grid"] = args.grid
    if args.params is not None:
        kw["specs"] = load_parameter_specs(args.params)
    behav = {k: v for k, v in (("kappa", args.kappa), ("alpha", args.alpha), ("lam", args.lam)) if v is not None}
    if behav:
        kw["params"] = replace(base.params, **behav)
    kw["out_dir"] = args.out if args.out is not None else Path("out")
    kw["workers"] = args.workers if args.workers > 0 else (os.cpu_count() or 1)
    return replace(base, **kw)


def _manifest(config: ScenarioConfig, command: str, extra: dict | None = None) -> dict:
    m = {"tool": "pvuptake", "version": __version__, "command": command, "config": config.to_manifest()}
    if extra:
        m.update(extra)
    return m


def _note_samples(config: ScenarioConfig) -> None:
    line = f"manifest: samples={config.n_samples} seed={config.seed}"
    if config.n_samples != DEFAULT_SAMPLES:
        line += f" (reduced from default {DEFAULT_SAMPLES})"
    print(line)


def cmd_simulate(args) -> int:
    config = config_from_args(args)
    _note_samples(config)
    result = run_scenario(config)
    paths = write_scenario(result, config.out_dir, density=args.export_density)
    write_manifest(_manifest(config, "simulate", {"outputs": [p.name for p in paths]}), config.out_dir / "manifest.json")
    for rep in result.reports:
        print(f"{rep.model}: scale={rep.scale:.1f} pearson_r={rep.pearson_r:.3f} significant={rep.significant}")
    for name, r in result.feature_correlations.items():
        print(f"{name}: pearson_r={r:.3f}")
    print(f"wrote {len(paths)} files to {config.out_dir}")
    return 0


def cmd_sweep(args) -> int:
    if args.param not in SWEEP_PARAMETERS:
        raise InputError(f"unknown parameter {args.param!r}; legal parameters: {', '.join(SWEEP_PARAMETERS)}")
    config = config_from_args(args)
    _note_samples(config)
    result = sensitivity_sweep(config, args.param, args.values)
    config.out_dir.mkdir(parents=True, exist_ok=True)
    path = write_sweep(result, config.out_dir / f"sweep_{args.param}.csv")
    write_manifest(
        _manifest(config, "sweep", {"param": args.param, "values": args.values, "outputs": [path.name]}),
        config.out_dir / f"manifest_sweep_{args.param}.json",
    )
    for point in result.points:
        print(f"{args.param}={point.value:g}: pearson_r={point.pearson_r:.3f}")
    print(f"wrote {path}")
    return 0


def cmd_validate(args) -> int:
    data = args.data if args.data is not None else bundled_data_dir()
    inputs = load_inputs(data, args.start, args.end)
    for name in INPUT_FILES:
        s = getattr(inputs, name)
        print(f"{name}: {s.start}..{s.end} ({len(s)} months) {s.unit}")
    print(f"scenario range: {inputs.start}..{inputs.end} ({len(inputs.feed_in_tariff)} months)")
    return 0


COMMANDS = {"simulate": cmd_simulate, "sweep": cmd_sweep, "validate": cmd_validate}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("default")
            return COMMANDS[args.command](args)
    except InvariantError as exc:
        print(f"pvuptake: internal invariant violated: {exc}", file=sys.stderr)
        return 2
    except (InputError, *INPUT_ERRORS) as exc:
        msg = str(exc).splitlines()[0] if str(exc) else type(exc).__name__
        print(f"pvuptake: error: {msg}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
