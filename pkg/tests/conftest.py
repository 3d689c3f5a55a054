"""Collects acceptance outcomes and prints one verdict line per criterion."""

from collections import defaultdict

import pytest

_results: dict[int, list] = defaultdict(list)
_titles: dict[int, str] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion this test checks")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    m = item.get_closest_marker("criterion")
    if m is None:
        return
    num, title = m.args
    _titles[num] = title
    if rep.when == "call" or (rep.when == "setup" and not rep.passed):
        _results[num].append((item.name, rep.outcome))


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for num in sorted(_results):
        checks = _results[num]
        failed = [name for name, out in checks if out != "passed"]
        verdict = "PASS" if not failed else "FAIL"
        detail = f"{len(checks) - len(failed)}/{len(checks)} checks"
        if failed:
            detail += "; failing: " + ", ".join(failed)
        tr.write_line(f"{verdict}  criterion {num:>2}: {_titles[num]} ({detail})")
