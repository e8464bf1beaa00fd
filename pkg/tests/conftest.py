import os
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from pvuptake.analysis import fit_models  # noqa: E402
from pvuptake.scenario import ScenarioConfig, compute_mean_irr  # noqa: E402

GOLDEN = Path(__file__).parent / "golden"
FULL_N = 100_000
GOLDEN_SEED = 0

# (criterion, passed, detail) lines from the acceptance suite
ACCEPTANCE = []


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None or not (rep.when == "call" or (rep.when == "setup" and rep.failed)):
        return
    details = [v for k, v in item.user_properties if k == "detail"]
    detail = "; ".join(details)
    if rep.failed and not detail:
        detail = str(call.excinfo.value).splitlines()[0] if call.excinfo else "error"
    ACCEPTANCE.append((marker.args[0], rep.passed, detail))


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, detail in sorted(ACCEPTANCE):
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}: {detail}")


@pytest.fixture(scope="session")
def germany_full():
    """Bundled dataset at the full sample count; shared by acceptance and regression tests."""
    import time

    config = ScenarioConfig(n_samples=FULL_N, seed=GOLDEN_SEED, workers=os.cpu_count() or 1)
    t0 = time.perf_counter()
    inputs = config.load()
    result = fit_models(compute_mean_irr(config, inputs), inputs, config.params)
    return result, time.perf_counter() - t0
