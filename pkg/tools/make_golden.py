"""Freeze the bundled-data regression files (N = 100,000, seed 0).

Run once from a validated build; the regression test compares against them.
"""

import os
from pathlib import Path

from pvuptake.analysis import run_scenario
from pvuptake.export import write_fit_report, write_mean_irr
from pvuptake.scenario import ScenarioConfig

GOLDEN = Path(__file__).resolve().parents[1] / "tests" / "golden"


def main():
    GOLDEN.mkdir(exist_ok=True)
    result = run_scenario(ScenarioConfig(n_samples=100_000, seed=0, workers=os.cpu_count() or 1))
    write_mean_irr(result.mean_irr, GOLDEN / "mean_irr_germany.csv")
    write_fit_report(result.reports, GOLDEN / "fit_report_germany.csv")
    for rep in result.reports:
        print(rep)


if __name__ == "__main__":
    main()
