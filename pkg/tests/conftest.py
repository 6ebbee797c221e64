from __future__ import annotations

import re

import pytest

_CRITERION = re.compile(r"test_criterion_(\d+)_")
_outcomes: dict[int, tuple[str, str]] = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    match = _CRITERION.match(item.name)
    if match and report.when == "call":
        status = "PASS" if report.passed else "FAIL"
        _outcomes[int(match.group(1))] = (status, item.name)


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_outcomes):
        status, name = _outcomes[number]
        terminalreporter.write_line(f"criterion {number}: {status} ({name})")
