import pytest

from qalink.corpus import fixtures as _fixtures
from qalink.diagram import parse_pd

TREFOIL = "X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)"


@pytest.fixture(scope="session")
def fx():
    return _fixtures()


@pytest.fixture(scope="session")
def trefoil():
    return parse_pd(TREFOIL)


ACCEPTANCE_LINES: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for n in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[n])
