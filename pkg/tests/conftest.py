import pytest

from qtransmute.catalog import table1_code, table2_code, five_qubit_code


@pytest.fixture(scope="session")
def table1():
    return table1_code()


@pytest.fixture(scope="session")
def table2():
    return table2_code()


@pytest.fixture(scope="session")
def five_qubit():
    return five_qubit_code()
