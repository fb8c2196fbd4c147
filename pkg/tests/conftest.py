import pytest

from cobasic import direct_sum, field, matrix, upper_triangular


@pytest.fixture(scope="session")
def K():
    return field()


@pytest.fixture(scope="session")
def M2():
    return matrix(2)


@pytest.fixture(scope="session")
def T2():
    return upper_triangular(2)


@pytest.fixture(scope="session")
def KK():
    return direct_sum(field(), field())


@pytest.fixture(scope="session")
def zoo(K, T2, M2):
    return [K, T2, M2]
