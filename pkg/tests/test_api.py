import pytest
from fastapi.testclient import TestClient

from config import settings
from main import app

API = settings.API_V1_STR


@pytest.fixture(scope="module")
def client():
    return TestClient(app)


def test_health(client):
    assert client.get("/health").json() == {"status": "healthy"}


def test_walks(client):
    response = client.get(f"{API}/walks/", params={"model": "kreweras", "max_length": 9, "aggregate": "origin"})
    assert response.status_code == 200
    assert response.json()["values"] == ["1", "0", "0", "2", "0", "0", "16", "0", "0", "192"]


@pytest.mark.parametrize(
    "params",
    [
        {"steps": "(0,1);(0,-1)", "start": "-1,0"},
        {"model": "square", "steps": "(0,1);(0,-1)"},
        {"model": "hexagonal"},
        {"model": "square", "max_length": -2},
    ],
)
def test_bad_input_is_400(client, params):
    assert client.get(f"{API}/walks/", params=params).status_code == 400


def test_kernel_errors_are_422(client):
    response = client.get(f"{API}/series/", params={"steps": "(0,-2);(1,1);(-1,1)", "what": "Y0", "order": 4})
    assert response.status_code == 422


def test_verify(client):
    response = client.get(f"{API}/verify/square", params={"order": 4})
    assert response.status_code == 200
    assert response.json()["passed"] is True


def test_verify_raw_steps(client):
    response = client.get(f"{API}/verify/", params={"steps": "(1,0);(0,1);(-1,-1)", "order": 6})
    assert response.status_code == 200
    assert response.json()["passed"] is True


def test_series(client):
    response = client.get(f"{API}/series/", params={"model": "kreweras", "what": "X", "order": 10})
    assert response.status_code == 200
    assert response.json()["series"][0]["text"] == "2*t + 8*t^4 + 96*t^7 + 1536*t^10 + O(t^11)"


def test_criterion(client):
    response = client.get(f"{API}/criterion/", params={"model": "kreweras"})
    assert response.status_code == 200
    assert response.json()["holonomy_sufficient"] is False


def test_asymptotics_structural_zero(client):
    response = client.get(f"{API}/asymptotics/", params={"model": "knight", "aggregate": "endpoint(3,3)", "max_n": 22})
    assert response.status_code == 200
    assert response.json()["nonzero_indices"] == [4]
