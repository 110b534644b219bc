def test_read_root(client):
    response = client.get("/")
    assert response.status_code == 200, response.text
    assert response.json() == {"message": "Siegel congruences"}


def test_predict_pair(client):
    response = client.post(
        "/api/predictions/pair",
        json={"n": 3, "k": 5, "l": 30, "names": ["Psi5", "Phi30"]},
    )
    assert response.status_code == 200, response.text
    data = response.json()
    assert data["mode"] == "valuation"
    assert {(tuple(r["target"]), r["prime"]) for r in data["results"]} == {
        (("Psi5",), 3),
        (("Phi30",), 59),
        (("Psi5", "Phi30"), 23),
    }
    assert data["results"][0]["pairing"] == {"f": ["Psi5"], "g": ["Phi30"], "k": 5, "l": 30}


def test_predict_pair_strict(client):
    response = client.post("/api/predictions/pair", json={"n": 3, "k": 5, "l": 30, "mode": "strict"})
    assert response.status_code == 200, response.text
    assert sorted(r["prime"] for r in response.json()["results"]) == [23, 59]


def test_predict_pair_degenerate(client):
    response = client.post("/api/predictions/pair", json={"n": 4, "k": 1, "l": 6})
    assert response.status_code == 400, response.text
    assert "degenerate" in response.json()["detail"]


def test_predict_pair_wrong_names(client):
    response = client.post("/api/predictions/pair", json={"n": 3, "k": 5, "l": 30, "names": ["Psi5"]})
    assert response.status_code == 400, response.text
    assert response.json()["detail"] == "Give exactly two names"


def test_predict_pair_validation(client):
    response = client.post("/api/predictions/pair", json={"n": 2, "k": 5, "l": 30})
    assert response.status_code == 422, response.text


def test_predict_family(client):
    response = client.post(
        "/api/predictions/family",
        json={"n": 6, "weights": [24, 72], "names": ["Psi24", "Phi72"]},
    )
    assert response.status_code == 200, response.text
    results = response.json()["results"]
    assert {r["prime"] for r in results if r["target"] == ["Phi72"]} == {5, 7}
    assert 47 in {r["prime"] for r in results if r["target"] == ["Psi24", "Phi72"]}


def test_predict_family_name_mismatch(client):
    response = client.post("/api/predictions/family", json={"n": 3, "weights": [5, 30], "names": ["Psi5"]})
    assert response.status_code == 400, response.text


def test_predict_identity(client):
    response = client.post(
        "/api/predictions/identity",
        json={"n": 13, "k": 142, "l": 1, "rhs": "1950", "names": ["Phi142", "Psi1"]},
    )
    assert response.status_code == 200, response.text
    data = response.json()
    assert data["mode"] == "identity"
    assert {(tuple(r["target"]), r["prime"], r["exponent"]) for r in data["results"]} == {
        (("Phi142",), 13, 1),
        (("Phi142", "Psi1"), 5, 2),
    }


def test_predict_identity_zero_rhs(client):
    response = client.post("/api/predictions/identity", json={"n": 13, "k": 142, "l": 1, "rhs": "0"})
    assert response.status_code == 400, response.text


def test_eisenstein_constant(client):
    response = client.get("/api/predictions/eisenstein-constant", params={"root": "E7", "k": 165, "l": 4})
    assert response.status_code == 200, response.text
    assert response.json() == {"root": "E7", "k": 165, "l": 4, "value": "-969/2"}


def test_eisenstein_constant_unknown_root(client):
    response = client.get("/api/predictions/eisenstein-constant", params={"root": "E9", "k": 165, "l": 4})
    assert response.status_code == 404, response.text
    assert response.json()["detail"] == "Root system not found"
