import pytest

from blgroups.groups import (
    direct_product,
    from_permutations,
    make_cyclic_product,
    trivial_group,
)


@pytest.fixture(scope="session")
def Z2():
    return make_cyclic_product([2])


@pytest.fixture(scope="session")
def Z3():
    return make_cyclic_product([3])


@pytest.fixture(scope="session")
def Z4():
    return make_cyclic_product([4])


@pytest.fixture(scope="session")
def Z6():
    return make_cyclic_product([6])


@pytest.fixture(scope="session")
def S3():
    return from_permutations(3, [(1, 0, 2), (1, 2, 0)])


@pytest.fixture(scope="session")
def Z2xZ2():
    return direct_product(make_cyclic_product([2]), make_cyclic_product([2]))


@pytest.fixture(scope="session")
def E1():
    return trivial_group()
