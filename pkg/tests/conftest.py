import pytest

from malcevlab import (
    free_anticommutative,
    multilinear_base_22,
    second_type_example,
    zoo,
)


@pytest.fixture(scope="session")
def atilde():
    return second_type_example()


@pytest.fixture(scope="session")
def base22():
    return multilinear_base_22()


@pytest.fixture(scope="session")
def animals():
    return zoo()


@pytest.fixture(scope="session")
def free44():
    return free_anticommutative(4, 4)
