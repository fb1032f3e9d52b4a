import numpy as np
import pytest

from ttolab import BlaschkeProduct, BoundaryGrid, ModelSpaceBasis

# one pass/fail line per acceptance criterion, printed after the test run
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def grid():
    return BoundaryGrid(1024)


@pytest.fixture(scope="session")
def u_z2():
    return BlaschkeProduct(((0.0j, 2),))


@pytest.fixture(scope="session")
def u_z3():
    return BlaschkeProduct(((0.0j, 3),))


@pytest.fixture(scope="session")
def basis_z2(u_z2, grid):
    return ModelSpaceBasis(u_z2, grid)


@pytest.fixture(scope="session")
def basis_z3(u_z3, grid):
    return ModelSpaceBasis(u_z3, grid)


@pytest.fixture(scope="session")
def u_mixed():
    # degree 3, u(0) != 0, distinct zeros
    return BlaschkeProduct(
        ((0.3 + 0.1j, 1), (-0.2 + 0.4j, 1), (0.5 - 0.25j, 1)),
        np.exp(0.3j),
    )


@pytest.fixture(scope="session")
def basis_mixed(u_mixed, grid):
    return ModelSpaceBasis(u_mixed, grid)
