"""Collects acceptance-criterion outcomes and prints one line per criterion."""

import pytest

_results: dict[int, dict] = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    number, title = mark.args
    entry = _results.setdefault(number, {"title": title, "passed": [], "failed": []})
    if report.when == "call" or (report.when == "setup" and report.failed):
        (entry["passed"] if report.passed else entry["failed"]).append(item.name)


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for number in sorted(_results):
        e = _results[number]
        state = "FAIL" if e["failed"] else "PASS"
        ran = len(e["passed"]) + len(e["failed"])
        tr.write_line(f"criterion {number:2d} {state}  {e['title']} ({ran} checks)")
