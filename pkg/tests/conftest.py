import pytest

from monopole_star.families import load_family


@pytest.fixture(scope="session")
def acceptance_family():
    return load_family("acceptance")


@pytest.fixture(scope="session")
def coords_family():
    return load_family("coords")


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
