import warnings

import pytest

warnings.filterwarnings("ignore", message=".*TBB threading layer.*")


@pytest.fixture(scope="session")
def mp():
    import mpmath

    mpmath.mp.dps = 40
    return mpmath


ACCEPTANCE_ROWS = pytest.StashKey()


@pytest.fixture
def acceptance_rows(request):
    return request.config.stash.setdefault(ACCEPTANCE_ROWS, [])


def pytest_terminal_summary(terminalreporter, config):
    rows = config.stash.get(ACCEPTANCE_ROWS, [])
    if rows:
        terminalreporter.section("acceptance criteria")
        for line in rows:
            terminalreporter.write_line(line)
