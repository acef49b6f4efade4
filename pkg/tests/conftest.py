"""Prints one PASS/FAIL line per acceptance criterion after the run.

Each test in test_acceptance.py records a "criterion" property naming
the contract line it guards; the summary section below turns those
into a compact checklist.
"""

from __future__ import annotations

_acceptance_results: list[tuple[str, str]] = []


def pytest_runtest_logreport(report):
    if "test_acceptance.py" not in report.nodeid:
        return
    label = dict(report.user_properties).get("criterion")
    if report.when == "call":
        name = label or report.nodeid.split("::")[-1]
        _acceptance_results.append((name, report.outcome.upper()))
    elif report.when == "setup" and report.failed:
        _acceptance_results.append((report.nodeid.split("::")[-1], "FAILED"))


def pytest_terminal_summary(terminalreporter, exitstatus):
    if not _acceptance_results:
        return
    terminalreporter.section("acceptance criteria")
    for name, outcome in _acceptance_results:
        status = "PASS" if outcome == "PASSED" else "FAIL"
        terminalreporter.write_line(f"{status}  {name}")
