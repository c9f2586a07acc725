"""Collects acceptance outcomes and prints one PASS/FAIL line per criterion."""

from collections import defaultdict

_OUTCOMES = defaultdict(list)
_TITLES = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion a test belongs to")


def pytest_collection_modifyitems(items):
    for item in items:
        mark = item.get_closest_marker("criterion")
        if mark:
            number, title = mark.args
            _TITLES[number] = title
            item.user_properties.append(("criterion", number))


def pytest_runtest_logreport(report):
    number = dict(report.user_properties).get("criterion")
    if number is None:
        return
    if report.when == "call" or report.failed:
        _OUTCOMES[number].append((report.nodeid.split("::")[-1], report.passed))


def pytest_terminal_summary(terminalreporter):
    if not _OUTCOMES:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for number in sorted(_TITLES):
        runs = _OUTCOMES.get(number, [])
        ok = bool(runs) and all(passed for _, passed in runs)
        tr.write_line(f"{'PASS' if ok else 'FAIL'}  [{number:2d}] {_TITLES[number]}")
        for name, passed in runs:
            if not passed:
                tr.write_line(f"        failing: {name}")
