from __future__ import annotations

import sys
import time
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

_CRITERIA: dict[int, dict] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion covered by the test")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None or report.when != "call" and not (report.when == "setup" and report.failed):
        return
    number, title = marker.args
    entry = _CRITERIA.setdefault(number, {"title": title, "passed": 0, "failed": [], "seconds": 0.0})
    entry["seconds"] += report.duration
    if report.passed:
        entry["passed"] += 1
    else:
        entry["failed"].append(item.name)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        e = _CRITERIA[number]
        status = "FAIL" if e["failed"] else "PASS"
        line = f"criterion {number:2d}: {status}  {e['title']}  ({e['seconds']:.1f} s)"
        if e["failed"]:
            line += f"  failing: {', '.join(e['failed'])}"
        terminalreporter.write_line(line)


@pytest.fixture
def budget():
    """Assert a block finishes within ``seconds`` of wall-clock time."""

    class _Budget:
        def __init__(self):
            self.start = time.perf_counter()

        def check(self, seconds: float):
            elapsed = time.perf_counter() - self.start
            assert elapsed < seconds, f"took {elapsed:.1f} s, budget {seconds} s"

    return _Budget()
