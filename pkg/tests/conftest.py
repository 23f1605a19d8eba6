import numpy as np
import pytest

from gaussian_ergotropy.states import QuadraticHamiltonian, StateMoments


@pytest.fixture
def h0():
    return QuadraticHamiltonian.standard(1)


@pytest.fixture
def squeezed():
    return StateMoments(np.zeros(2), np.diag([4.0, 0.25]), 0.0)


@pytest.fixture
def fock_one_moments():
    return StateMoments(np.zeros(2), 3.0 * np.eye(2), 0.0)


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for number in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[number])
