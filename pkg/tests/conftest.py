import pytest

from lossqec.codes import named_code, rotated_surface_code


@pytest.fixture(scope="session")
def five_qubit():
    return named_code("five_qubit")


@pytest.fixture(scope="session")
def steane():
    return named_code("steane")


@pytest.fixture(scope="session")
def det422():
    return named_code("det422")


@pytest.fixture(scope="session")
def qutrit_513():
    return named_code("qutrit_513")


@pytest.fixture(scope="session")
def ghz3():
    return named_code("ghz3")


@pytest.fixture(scope="session")
def surface25():
    return rotated_surface_code(5)
