import json

from main import app
from src.repository.catalog import catalog_entries, loads_catalog


def test_read_catalog(client):
    response = client.get("/api/catalog/")
    assert response.status_code == 200, response.text
    data = response.json()
    assert len(data) == 22
    d11 = next(e for e in data if e["lattice"] == "2U+D11")
    assert d11["rhs_constant"] == "1950"
    assert "root_system" not in d11


def test_run_catalog(client):
    response = client.get("/api/catalog/run")
    assert response.status_code == 200, response.text
    data = response.json()
    assert data["mode"] == "valuation"
    assert data["missed_total"] == 0
    assert data["verified_total"] == data["claims_total"]


def test_run_catalog_strict(client):
    response = client.get("/api/catalog/run", params={"mode": "strict"})
    assert response.status_code == 200, response.text
    data = response.json()
    assert data["missed_total"] == 0
    assert data["out_of_mode_total"] > 0


def test_run_catalog_bad_mode(client):
    response = client.get("/api/catalog/run", params={"mode": "identity"})
    assert response.status_code == 400, response.text
    assert response.json()["detail"] == "Mode must be strict or valuation"


def test_catalog_override(client):
    entry = {
        "lattice": "2U+A3",
        "n": 5,
        "forms": [{"name": "Psi9", "weight": 9}, {"name": "Phi54", "weight": 54}],
        "claims": [{"product": ["Phi54"], "prime": 11, "source": "strict"}],
    }
    entries = loads_catalog(json.dumps([entry]))
    app.dependency_overrides[catalog_entries] = lambda: entries
    try:
        response = client.get("/api/catalog/run")
    finally:
        del app.dependency_overrides[catalog_entries]
    assert response.status_code == 200, response.text
    data = response.json()
    assert data["missed_total"] == 1
    assert data["entries"][0]["missed"][0]["prime"] == 11


def test_signature(client):
    response = client.get("/api/catalog/signature", params={"label": "2U+D11"})
    assert response.status_code == 200, response.text
    assert response.json()["n"] == 13


def test_signature_bad_label(client):
    response = client.get("/api/catalog/signature", params={"label": "2U+B3"})
    assert response.status_code == 400, response.text
