import sys
from collections import OrderedDict
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from framecoh.linalg import make_density  # noqa: E402

_CRITERIA: "OrderedDict[int, dict]" = OrderedDict()


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def qutrit136():
    return make_density(np.diag([1.0, 2.0, 3.0]) / 6)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    number, description = marker.args
    entry = _CRITERIA.setdefault(number, {"description": description, "failed": [], "ran": 0})
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        entry["ran"] += 1
        if report.outcome != "passed":
            entry["failed"].append(item.name)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        entry = _CRITERIA[number]
        verdict = "PASS" if not entry["failed"] else "FAIL"
        line = f"criterion {number:>2}: {verdict}  {entry['description']}"
        if entry["failed"]:
            line += f"  [failed: {', '.join(entry['failed'])}]"
        tr.write_line(line)
