import pathlib

import pytest
from fastapi.testclient import TestClient

from fluentplan.service import app

REPO_ROOT = pathlib.Path(__file__).resolve().parent.parent
GRIPPER_1 = (REPO_ROOT / "domains" / "gripper-1.fcp").read_text()


@pytest.fixture(scope="module")
def client():
    return TestClient(app)


def test_health(client):
    response = client.get("/health")
    assert response.status_code == 200
    assert response.json()["status"] == "ok"


def test_generate_roundtrips(client):
    response = client.post("/generate", json={"family": "gripper", "n": 2})
    assert response.status_code == 200
    body = response.json()
    assert body["name"] == "gripper-2"
    check = client.post("/validate", json={"domain_text": body["domain_text"]})
    assert check.json() == {"valid": True, "diagnostics": []}


def test_generate_blocksworld(client):
    response = client.post("/generate", json={"family": "blocksworld", "n": 3})
    assert response.status_code == 200
    assert "on" in response.json()["domain_text"]


def test_generate_blocksworld_needs_two_blocks(client):
    response = client.post("/generate", json={"family": "blocksworld", "n": 1})
    assert response.status_code == 422


def test_validate_reports_diagnostics(client):
    bad = "(problem x)(sorts (S a))(fluents (p S))(init (q a))(goal (and))"
    response = client.post("/validate", json={"domain_text": bad})
    body = response.json()
    assert body["valid"] is False
    assert any("unknown fluent symbol" in d for d in body["diagnostics"])


def test_validate_reports_syntax_errors(client):
    response = client.post("/validate", json={"domain_text": "(sorts (S a)"})
    body = response.json()
    assert body["valid"] is False
    assert "line" in body["diagnostics"][0]


def test_solve_generated_problem(client):
    response = client.post("/solve", json={"gripper": 2})
    assert response.status_code == 200
    body = response.json()
    assert body["outcome"] == "plan"
    assert body["plan_length"] == 5
    assert body["goal_step"] == 5
    assert [s["index"] for s in body["plan"]] == [1, 2, 3, 4, 5]
    assert body["num_fluents"] == 12


def test_solve_domain_text(client):
    response = client.post("/solve", json={"domain_text": GRIPPER_1})
    assert response.status_code == 200
    body = response.json()
    assert body["outcome"] == "plan"
    assert body["plan_length"] == 3
    assert body["problem"] == "gripper-1"


def test_solve_with_options(client):
    request = {
        "gripper": 2,
        "order": "lexical",
        "partition_threshold": 50,
        "frontier": True,
        "extract_plan": False,
    }
    response = client.post("/solve", json=request)
    body = response.json()
    assert body["outcome"] == "plan"
    assert body["plan"] is None
    assert len(body["part_sizes"]) > 1


def test_solve_step_limit(client):
    response = client.post("/solve", json={"gripper": 2, "max_steps": 1})
    assert response.json()["outcome"] == "limit"


def test_solve_requires_exactly_one_source(client):
    assert client.post("/solve", json={}).status_code == 422
    both = {"gripper": 1, "domain_text": GRIPPER_1}
    assert client.post("/solve", json=both).status_code == 422


def test_solve_invalid_domain_is_400(client):
    bad = "(problem x)(sorts (S a))(fluents (p S))(init (q a))(goal (and))"
    response = client.post("/solve", json={"domain_text": bad})
    assert response.status_code == 400
    assert any("unknown fluent symbol" in d for d in response.json()["detail"])
