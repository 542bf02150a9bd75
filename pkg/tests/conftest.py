import pytest

from perfasym import embedded_reference, reference_partition


@pytest.fixture(scope="session")
def ref():
    return embedded_reference()


@pytest.fixture(scope="session")
def partition():
    return reference_partition()


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for num in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[num])
