import pytest

from kerbinom import kernels
from kerbinom.gf import tower_field


@pytest.fixture(params=kernels.available())
def backend(request):
    return request.param


@pytest.fixture(scope="session")
def f16():
    return tower_field(2, 2)


@pytest.fixture(scope="session")
def f1024():
    return tower_field(2, 5)


SMALL_TOWERS = [(2, 1), (2, 2), (3, 1), (2, 3), (3, 2), (4, 2), (5, 2), (3, 3)]
