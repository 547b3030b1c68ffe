from pathlib import Path

import pytest

CORPUS = Path(__file__).resolve().parent.parent / "corpus"

_criteria = {}


@pytest.fixture
def corpus():
    return CORPUS


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    number, title = mark.args
    if rep.when == "call" or rep.failed:
        prev_ok, _, prev_time = _criteria.get(number, (True, title, 0.0))
        _criteria[number] = (prev_ok and rep.passed, title, prev_time + rep.duration)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        ok, title, duration = _criteria[number]
        terminalreporter.write_line(f"criterion {number:>2}: {'PASS' if ok else 'FAIL'}  {title}  ({duration:.2f}s)")
