import collections

import pytest

_criteria = collections.OrderedDict()


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion number")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or rep.when != "call" and not rep.failed:
        return
    n = mark.args[0]
    entry = _criteria.setdefault(n, {"passed": 0, "failed": []})
    if rep.passed and rep.when == "call":
        entry["passed"] += 1
    elif rep.failed:
        entry["failed"].append(item.name)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_criteria):
        e = _criteria[n]
        if e["failed"]:
            terminalreporter.write_line(f"criterion {n}: FAIL ({', '.join(e['failed'])})")
        else:
            terminalreporter.write_line(f"criterion {n}: PASS ({e['passed']} checks)")
