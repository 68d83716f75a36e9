import re

_CRITERIA = {}
_NAME = re.compile(r"test_acceptance\.py::test_criterion_(\d+)[a-z]?_(\w+)")


def pytest_runtest_logreport(report):
    m = _NAME.search(report.nodeid)
    if not m or (report.when != "call" and not report.failed):
        return
    number = int(m.group(1))
    ok = _CRITERIA.get(number, (True, m.group(2)))[0] and report.passed
    _CRITERIA[number] = (ok, _CRITERIA.get(number, (True, m.group(2)))[1])


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        ok, name = _CRITERIA[number]
        terminalreporter.write_line(f"criterion {number:2d} {name.replace('_', ' ')}: {'PASS' if ok else 'FAIL'}")
