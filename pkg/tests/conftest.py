import pytest
from hypothesis import settings

from helpers import C4_TEXT, DIAMOND_TEXT, F8_TEXT, P4_TEXT, labeled

settings.register_profile("default", max_examples=150, deadline=None)
settings.load_profile("default")


@pytest.fixture
def f8():
    return labeled(F8_TEXT)


@pytest.fixture
def c4():
    return labeled(C4_TEXT)


@pytest.fixture
def diamond():
    return labeled(DIAMOND_TEXT)


@pytest.fixture
def p4():
    return labeled(P4_TEXT)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
