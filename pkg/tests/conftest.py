import pytest

from zsl import acceptance

_ACCEPTANCE_LINES = {}


@pytest.fixture(scope="session")
def riemann100():
    return acceptance.riemann_catalog(100)


@pytest.fixture(scope="session")
def curve11():
    return acceptance.elliptic_setup("11a1")


@pytest.fixture(scope="session")
def curve37():
    return acceptance.elliptic_setup("37a1")


@pytest.fixture(scope="session")
def acceptance_log():
    """Criterion number -> PASS/FAIL line, echoed in the terminal summary."""
    return _ACCEPTANCE_LINES


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for number in sorted(_ACCEPTANCE_LINES):
            terminalreporter.write_line(_ACCEPTANCE_LINES[number])
