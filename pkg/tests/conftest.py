import pytest
from fastapi.testclient import TestClient

from main import app
from src.repository.forms import FormCache, get_forms
from src.services.igusa import build_tower

PREC = 6


@pytest.fixture(scope="session")
def tower():
    return build_tower(PREC)


@pytest.fixture(scope="module")
def form_cache(tmp_path_factory):
    return FormCache(tmp_path_factory.mktemp("forms"))


@pytest.fixture(scope="module")
def client(form_cache):
    # Dependency override

    app.dependency_overrides[get_forms] = lambda: form_cache

    yield TestClient(app)

    app.dependency_overrides.clear()
