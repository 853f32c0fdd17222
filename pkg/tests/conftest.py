import pytest

_RESULTS: dict[str, list[bool]] = {}
_TITLES: dict[str, str] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(label, title): acceptance criterion covered by the test")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    label, title = marker.args
    _TITLES[label] = title
    if report.when == "call" or (report.when == "setup" and report.failed):
        _RESULTS.setdefault(label, []).append(report.passed)


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for label in sorted(_RESULTS, key=lambda s: int(s.lstrip("AC"))):
        status = "PASS" if all(_RESULTS[label]) else "FAIL"
        terminalreporter.write_line(f"{status}  {label}  {_TITLES[label]}")
