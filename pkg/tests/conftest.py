import pytest
from hypothesis import HealthCheck, settings

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, name): acceptance criterion number and title")


_lines: dict[int, str] = {}
_setup: dict[int, float] = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or rep.when not in ("setup", "call"):
        return
    n, name = mark.args
    if rep.when == "setup":
        _setup[n] = rep.duration
    if rep.when == "call" or rep.failed:
        status = "PASS" if rep.passed else "FAIL"
        took = rep.duration + (_setup.get(n, 0.0) if rep.when == "call" else 0.0)
        _lines[n] = f"criterion {n:2d} {status}  {name}  ({took:.2f}s)"


def pytest_terminal_summary(terminalreporter):
    if not _lines:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_lines):
        terminalreporter.write_line(_lines[n])
