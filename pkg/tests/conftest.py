import pytest

from stanleydist.distexact import iter_distributions
from stanleydist.moments import moments_from_table


@pytest.fixture(scope="session")
def tables():
    """Exact tables for n = 1..200 from one DP pass."""
    return {t.n: t for t in iter_distributions(200)}


@pytest.fixture(scope="session")
def fit_moments(tables):
    """Moment tables on the fitting grid n = 100, 110, ..., 200."""
    return {n: moments_from_table(tables[n], 10) for n in range(100, 201, 10)}


_ACCEPTANCE_KEY = pytest.StashKey[list]()


@pytest.fixture
def acceptance_log(request):
    """Collects one summary line per acceptance criterion."""
    return request.config.stash.setdefault(_ACCEPTANCE_KEY, [])


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(_ACCEPTANCE_KEY, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
