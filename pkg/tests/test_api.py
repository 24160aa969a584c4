# tests/test_api.py
import sqlite3

import pytest
from fastapi.testclient import TestClient

from app.main import app


@pytest.fixture
def client(tmp_db):
    with TestClient(app) as c:
        yield c


def test_health(client):
    res = client.get("/health")
    assert res.status_code == 200
    assert res.json()["status"] == "OK"


def test_startup_creates_runs_table(client, tmp_db):
    conn = sqlite3.connect(tmp_db)
    try:
        names = {r[0] for r in conn.execute("SELECT name FROM sqlite_master WHERE type = 'table'")}
    finally:
        conn.close()
    assert "runs" in names


def test_list_campaigns(client):
    assert "closure" in client.get("/campaigns/").json()


def test_run_and_fetch(client):
    res = client.post("/campaigns/chart", json={"a": 1, "b": 1, "p": 3, "q_list": [3, 5, 7]})
    assert res.status_code == 200
    body = res.json()
    assert body["passed"] is True
    run_id = body["run_id"]
    assert run_id is not None

    detail = client.get(f"/campaigns/runs/{run_id}")
    assert detail.status_code == 200
    assert detail.json() == body["report"]

    runs = client.get("/campaigns/runs", params={"campaign": "chart"}).json()
    assert [r["id"] for r in runs] == [run_id]
    assert runs[0]["passed"] is True
    assert client.get("/campaigns/runs", params={"campaign": "hasse"}).json() == []


def test_run_without_archive(client):
    res = client.post("/campaigns/cmindex", json={"legs": [[1, 1], [1, 2]], "archive": False})
    assert res.status_code == 200
    assert res.json()["run_id"] is None
    assert client.get("/campaigns/runs").json() == []


def test_csv_export(client):
    run_id = client.post("/campaigns/chart", json={"a": 1, "b": 1, "q_list": [3, 5, 7]}).json()["run_id"]
    res = client.get(f"/exports/runs/{run_id}.csv")
    assert res.status_code == 200
    assert res.headers["content-type"].startswith("text/csv")
    assert f"splitlab_chart_run{run_id}.csv" in res.headers["content-disposition"]
    text = res.content.decode("utf-8")
    assert text.startswith("\ufeffa,b,q,count\n")


def test_errors(client):
    assert client.post("/campaigns/frobnicate", json={}).status_code == 404
    assert client.post("/campaigns/closure", json={"p": 2}).status_code == 422
    assert client.post("/campaigns/count", json={"a": 1, "b": 1, "budget": 3}).status_code == 413
    assert client.get("/campaigns/runs/999").status_code == 404
    assert client.get("/exports/runs/999.csv").status_code == 404
