import numpy as np
import pytest

from mvi_tseng import box_set, halfspace_set, hyperplane_box_set

ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def rng():
    return np.random.default_rng(20261017)


@pytest.fixture
def box():
    return box_set([0.0, 0.0], [10.0, 10.0])


@pytest.fixture
def box_no_proj():
    return box_set([0.0, 0.0], [10.0, 10.0], with_projector=False)


@pytest.fixture
def hbox():
    return hyperplane_box_set(np.full(4, -10.0), np.full(4, 10.0), 1.0)


@pytest.fixture
def hbox_no_proj():
    return hyperplane_box_set(np.full(4, -10.0), np.full(4, 10.0), 1.0, with_projector=False)


@pytest.fixture
def halfspace():
    return halfspace_set([1.0, 0.0], 0.0)


BUILTIN_SETS = {
    "box": lambda: box_set([0.0, 0.0], [10.0, 10.0]),
    "hyperplane_box": lambda: hyperplane_box_set(np.full(4, -10.0), np.full(4, 10.0), 1.0),
}
