"""Prints one PASS/FAIL line per acceptance criterion after the run."""

import pytest

_TITLES = {
    1: "SO(3) stabilizers and preimage components",
    2: "J for SO(3) marking multisets",
    3: "fundamental group table and exact sequence",
    4: "center orders equal |det Cartan|",
    5: "closed surface component counts",
    6: "nonemptiness",
    7: "numerical obstruction evaluator",
    8: "out-of-range discipline",
    9: "closed vs identity-marked identification",
}
_results: dict[int, list[bool]] = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None:
        return
    n = marker.args[0]
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        _results.setdefault(n, []).append(report.outcome == "passed")


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_TITLES):
        if n not in _results:
            continue
        status = "PASS" if all(_results[n]) else "FAIL"
        terminalreporter.write_line(f"criterion {n}: {status}  {_TITLES[n]}")
