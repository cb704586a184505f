import pytest

from symstab.catalog import build_model, load_catalog


@pytest.fixture(scope="session")
def catalog():
    return load_catalog()


@pytest.fixture(scope="session")
def models(catalog):
    return {e.id: build_model(e) for e in catalog}
