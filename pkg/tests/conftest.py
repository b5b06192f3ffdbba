"""Shared pytest configuration: per-criterion reporting for the acceptance suite."""

from typing import Dict, Tuple

import pytest

# criterion number -> (title, passed)
_RESULTS: Dict[int, Tuple[str, bool]] = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    n, title = marker.args
    failed = report.failed or (report.when == "call" and report.skipped)
    if report.when == "call" or failed:
        prev = _RESULTS.get(n, (title, True))[1]
        _RESULTS[n] = (title, prev and not failed)


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_RESULTS):
        title, ok = _RESULTS[n]
        terminalreporter.write_line(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {title}")
    passed = sum(ok for _, ok in _RESULTS.values())
    terminalreporter.write_line(f"{passed}/{len(_RESULTS)} acceptance criteria passed")
