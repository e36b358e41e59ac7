import pytest

from biheyt import chain_algebra, free_algebra
from biheyt.battery import poset_family, products_with_two


@pytest.fixture(scope="session")
def three():
    return chain_algebra(3)


@pytest.fixture(scope="session")
def two():
    return chain_algebra(2)


@pytest.fixture(scope="session")
def f1(three):
    return free_algebra([three], 1)


@pytest.fixture(scope="session")
def f2(three):
    # 3888 elements; the slowest shared object in the suite
    return free_algebra([three], 2)


@pytest.fixture(scope="session")
def posets_to_4():
    return poset_family(4)


@pytest.fixture(scope="session")
def family_to_4():
    return products_with_two(4)
