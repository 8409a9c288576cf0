import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from rankweights.field import Field  # noqa: E402
from rankweights.rank import MatrixCode, matrix_unit  # noqa: E402

DATA = Path(__file__).parent / "data"


@pytest.fixture
def F2():
    return Field(2)


@pytest.fixture
def F3():
    return Field(3)


@pytest.fixture
def viii_c(F2):
    """<E11, E12> in F_2^{2x2}."""
    return MatrixCode(F2, 2, 2, [matrix_unit(2, 2, 0, 0), matrix_unit(2, 2, 0, 1)])


@pytest.fixture
def rng():
    return np.random.default_rng(20261014)


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
