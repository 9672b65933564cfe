import pytest

import rsmcanon as rc


@pytest.fixture(scope="session")
def eu_model():
    return rc.load_bundled_eu_model()


@pytest.fixture(scope="session")
def eu_canon(eu_model):
    return rc.canonicalize(eu_model)
