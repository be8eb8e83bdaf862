import pytest

from deltacodes.field import Field


@pytest.fixture(scope="session")
def F4():
    return Field(2)


@pytest.fixture(scope="session")
def F8():
    return Field(3)


@pytest.fixture(scope="session")
def F16():
    return Field(4)


@pytest.fixture(scope="session")
def F32():
    return Field(5)
