import pytest

from geodex import catalog_a, catalog_b


@pytest.fixture(scope="session")
def cat_a():
    return catalog_a().digraph


@pytest.fixture(scope="session")
def cat_b():
    return catalog_b().digraph
