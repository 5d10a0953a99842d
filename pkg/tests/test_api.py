import pytest
from fastapi.testclient import TestClient

from src.main import app
from tests.conftest import HEISENBERG_JSON, MARRERO_JSON, NOT_JACOBI_JSON, REEB_STRUCTURE_JSON

IDENTITY = {"g": [[1, 0, 0], [0, 1, 0], [0, 0, 1]]}


@pytest.fixture
def client():
    return TestClient(app)


def test_health(client):
    response = client.get("/health")
    assert response.status_code == 200
    assert response.json()["status"] == "healthy"


def test_api_root(client):
    endpoints = client.get("/api").json()["endpoints"]
    assert endpoints["report"] == "/api/report"


def test_validate(client):
    response = client.post("/api/validate", json={"algebra": HEISENBERG_JSON})
    assert response.status_code == 200
    assert response.json()["verdict"] == "pass"

    body = client.post("/api/validate", json={"algebra": NOT_JACOBI_JSON}).json()
    assert body["verdict"] == "fail"
    assert body["failed_stage"] == "jacobi"


def test_parse_errors_are_unprocessable(client):
    payload = {"algebra": {"dim": 2, "brackets": [{"i": 1, "j": 2, "coeffs": {"1": 0.5}}]}}
    response = client.post("/api/validate", json=payload)
    assert response.status_code == 422
    assert "brackets[0].coeffs" in response.json()["detail"]


def test_classify(client):
    body = client.post("/api/classify", json={"algebra": HEISENBERG_JSON}).json()
    assert body["nilpotent"] is True
    assert body["lower_central_series"] == [3, 1, 0]


def test_cohomology_and_curvature(client):
    body = client.post("/api/cohomology", json={"algebra": MARRERO_JSON, "metric": IDENTITY}).json()
    assert body["data"]["betti"] == [1, 1, 1, 1]

    body = client.post("/api/curvature", json={"algebra": HEISENBERG_JSON, "metric": IDENTITY}).json()
    assert body["verdict"] == "fail"
    assert body["failed_stage"] == "flat"


def test_verify(client):
    body = client.post("/api/verify", json={"algebra": HEISENBERG_JSON, "structure": REEB_STRUCTURE_JSON}).json()
    assert body["failed_stage"] == "dα = 0"

    body = client.post(
        "/api/verify",
        json={"algebra": MARRERO_JSON, "structure": REEB_STRUCTURE_JSON, "kind": "normal"},
    ).json()
    assert body["verdict"] == "pass"


def test_verify_dimension_mismatch(client):
    response = client.post("/api/verify", json={"algebra": {"dim": 5}, "structure": REEB_STRUCTURE_JSON})
    assert response.status_code == 422


def test_kahler_identities(client):
    body = client.post("/api/kahler-identities", json={"algebra": MARRERO_JSON, "structure": REEB_STRUCTURE_JSON}).json()
    assert body["verdict"] == "pass"


def test_report(client):
    body = client.post("/api/report", json={"algebra": MARRERO_JSON, "structure": REEB_STRUCTURE_JSON}).json()
    assert body["dossier"]["verdicts"]["kahler_identities"] == "pass"
    assert body["markdown"].startswith("# Dossier: marrero")


def test_catalogue(client):
    names = client.get("/api/catalogue").json()["names"]
    assert "torus(3)" in names

    body = client.get("/api/catalogue/marrero(1,1)").json()
    assert body["dim"] == 3
    assert body["structure"]["xi"] == [0, 0, 1]

    body = client.get("/api/catalogue/kahler_aff").json()
    assert set(body["structure"]) == {"J", "g"}

    assert client.get("/api/catalogue/sphere").status_code == 404


def test_zero_denominator_is_unprocessable(client):
    payload = {"algebra": {"dim": 2, "brackets": [{"i": 1, "j": 2, "coeffs": {"1": "1/0"}}]}}
    response = client.post("/api/validate", json=payload)
    assert response.status_code == 422
    assert "brackets[0].coeffs" in response.json()["detail"]


@pytest.mark.parametrize("path", ["/api/cohomology", "/api/classify"])
def test_non_lie_table_is_unprocessable(client, path):
    response = client.post(path, json={"algebra": NOT_JACOBI_JSON})
    assert response.status_code == 422
    assert "not a Lie algebra" in response.json()["detail"]
