import pytest

from charloc.acceptance import load_datum
from charloc.lattice import Weight


@pytest.fixture(scope="session")
def a2():
    return load_datum("a2")


@pytest.fixture(scope="session")
def a2_roots():
    return load_datum("a2_roots")


@pytest.fixture(scope="session")
def a2_levi():
    return load_datum("a2_levi")


@pytest.fixture(scope="session")
def sl2():
    return load_datum("sl2")


def X(k):
    return Weight((k,))
