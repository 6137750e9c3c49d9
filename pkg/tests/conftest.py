import pytest

from helpers import ACCEPTANCE_LINES, WORKED, graph_of


@pytest.fixture
def worked_graph():
    return graph_of(WORKED)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
