import numpy as np
import pytest

from hprodspec import graphs as g

ACCEPTANCE_LINES = []


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


@pytest.fixture
def example_H():
    # triangle on {0,1,2} plus the pendant edge 2-3
    return g.from_edge_pairs(4, [(0, 1), (1, 2), (0, 2), (2, 3)])


@pytest.fixture
def example_factors():
    return [g.complete(4), g.circulant(4, [2]), g.cycle(4), g.complete(4)]


@pytest.fixture
def example_params():
    return g.UniversalParams(2, 1, 2, 1)


@pytest.fixture
def acceptance_log():
    def log(criterion, passed, detail=""):
        status = "PASS" if passed else "FAIL"
        ACCEPTANCE_LINES.append(f"criterion {criterion}: {status} {detail}".rstrip())
    return log


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
