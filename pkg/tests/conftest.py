import pytest
from hypothesis import HealthCheck, settings

from blockinv import collinearity
from blockinv.presets import get_design

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@pytest.fixture(scope="session")
def ott():
    return get_design("ottaviani15")


@pytest.fixture(scope="session")
def ott_graph(ott):
    return collinearity(ott)


@pytest.fixture(scope="session")
def aronhold():
    return get_design("aronhold")


# -- acceptance summary: one line per criterion ------------------------------

_ACCEPTANCE: list[tuple[str, str]] = []


def pytest_runtest_logreport(report):
    if "test_acceptance.py" not in report.nodeid:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        label = report.nodeid.split("::")[-1]
        _ACCEPTANCE.append((label, report.outcome.upper()))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for label, outcome in _ACCEPTANCE:
        verdict = "PASS" if outcome == "PASSED" else "FAIL"
        terminalreporter.write_line(f"{verdict}  {label}")
