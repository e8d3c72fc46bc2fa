from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

settings.register_profile("default", deadline=None, derandomize=True,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def fractions(lo: int = -10, hi: int = 10, max_den: int = 6):
    return st.builds(Fraction, st.integers(lo * max_den, hi * max_den), st.integers(1, max_den))


def pmfs(max_len: int = 8, top: int = 9):
    """Raw nonnegative weight vectors with nonzero ends."""
    return (st.lists(st.integers(0, top), min_size=1, max_size=max_len)
            .map(lambda xs: [xs[0] or 1] + xs[1:-1] + [xs[-1] or 1] if len(xs) > 1 else [xs[0] or 1]))


@pytest.fixture
def parity_json(tmp_path):
    path = tmp_path / "parity.json"
    path.write_text('{"n_v":4,"clauses":[[1,2,4],[2,3,4],[1,3,4],[1,2,3]]}')
    return str(path)
