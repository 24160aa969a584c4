# tests/test_campaigns.py
import pytest

from app.algebra import hasse
from app.algebra.errors import BudgetExceeded
from app.algebra.pimodule import CASE1, CASE2
from app.services.campaigns import HASSE_MIN_DATA, run_campaign
from app.services.reports import canonical_json, render, to_csv
from app.services.settings import ConfigError, build_config


def _run(name, **kw):
    return run_campaign(build_config(name, **kw))


def _ids(report):
    return {c["id"] for c in report["checks"]}


# ---------- 캠페인별 ----------
def test_count_odd_degrees():
    report = _run("count", a=1, b=1, p=3, q_list="3,5,7")
    assert report["passed"], report["failures"]
    assert report["data"]["degrees"] == {"0,0": 1, "0,1": 0, "1,1": 1}
    assert {"P2.8-inequality", "P2.9-partition", "P2.12-dimension", "OQ-gram-invariance"} <= _ids(report)
    q3 = {tuple(r["stratum"]): r["count"] for r in report["data"]["records"] if r["p"] == 3}
    assert q3 == {(0, 0): 2, (0, 1): 2, (1, 1): 6}


def test_count_default_fields_confirm_every_degree():
    report = _run("count", a=1, b=2, p=3)
    assert report["passed"], report["failures"]
    assert sorted({r["p"] ** r["f"] for r in report["data"]["records"]}) == [3, 5, 7, 9]
    dimension = next(c for c in report["checks"] if c["id"] == "P2.12-dimension")
    assert dimension["passed"] is True
    assert "skip" not in dimension["detail"]
    assert report["data"]["degrees"] == {"0,0": 2, "0,1": 1, "1,1": 2}


def test_count_char2_case2_parity():
    report = _run("count", a=1, b=1, p=2, case=CASE2, q_list="2,4")
    assert report["passed"], report["failures"]
    assert "P6.5-parity" in _ids(report)


def test_closure_small():
    report = _run("closure", a=1, b=2, p=3, N=6, samples=20)
    assert report["passed"], report["failures"]
    assert report["data"]["reachability"] == [[1, 0, 0], [1, 1, 1], [0, 0, 1]]
    assert len(report["data"]["witnesses"]) == 5


def test_tangent_small():
    report = _run("tangent", a=1, b=2, p=3)
    assert report["passed"], report["failures"]


def test_char2_small():
    report = _run("char2", a=1, b=1, p=2)
    assert report["passed"], report["failures"]
    assert "P6.1-classification" in _ids(report)


def test_weights_small():
    report = _run("weights", a=1, b=2, weight_range=2)
    assert report["passed"], report["failures"]
    converse = next(c for c in report["checks"] if c["id"] == "T3.9-converse")
    assert converse["passed"] is None


def test_hasse_small():
    report = _run("hasse", n=1, p=3, samples=60)
    assert report["passed"], report["failures"]
    volume = next(c for c in report["checks"] if c["id"] == "P4.2-volume")
    assert volume["passed"] is None
    assert "R1" not in report["data"]["realized"]
    assert report["data"]["edges"][0] == ["B1", "B0"]


@pytest.mark.parametrize("n,f", [(1, 1), (1, 2), (2, 1), (2, 2)])
def test_hasse_default_run_reaches_data_volume(n, f):
    report = _run("hasse", n=n, p=2, f=f)
    assert report["config"]["samples"] >= HASSE_MIN_DATA
    volume = next(c for c in report["checks"] if c["id"] == "P4.2-volume")
    assert volume["passed"] is True, volume["detail"]
    assert sum(report["data"]["label_counts"].values()) >= HASSE_MIN_DATA
    assert report["passed"], report["failures"]


def test_hasse_volume_fails_when_too_few_data_survive(monkeypatch):
    monkeypatch.setattr(hasse, "search_examples", lambda n, field, budget, seed: hasse.SearchResult([], budget, budget))
    report = _run("hasse", n=1, p=3, samples=HASSE_MIN_DATA)
    volume = next(c for c in report["checks"] if c["id"] == "P4.2-volume")
    assert volume["passed"] is False
    assert not report["passed"]


def test_cmindex_small():
    report = _run("cmindex", legs="1:1,2:2")
    assert report["passed"], report["failures"]
    assert report["data"]["size"] == 18
    assert report["config"]["legs"] == [[1, 1], [2, 2]]


def test_chart_a1_b1():
    report = _run("chart", a=1, b=1, p=3, q_list="3,5,7")
    assert report["passed"], report["failures"]
    assert report["data"]["counts"] == {"3": 5, "5": 9, "7": 13}


# ---------- 보고서 ----------
def test_same_seed_same_bytes():
    first = canonical_json(_run("closure", a=1, b=1, p=3, samples=10, seed=5))
    second = canonical_json(_run("closure", a=1, b=1, p=3, samples=10, seed=5))
    assert first == second


def test_report_envelope():
    report = _run("count", a=1, b=1, p=3, q_list="3,5,7", seed=9)
    assert report["tool"] == "splitlab"
    assert report["seed"] == 9
    assert report["config"]["case"] == "odd"
    assert "output" not in report["config"]
    assert report["failures"] == []


def test_render_formats():
    report = _run("chart", a=1, b=1, p=3, q_list="3,5,7")
    csv_text = to_csv(report)
    assert csv_text.splitlines()[0] == "a,b,q,count"
    assert csv_text.splitlines()[1] == "1,1,3,5"
    text = render(report, "text")
    assert "all checks passed" in text
    assert "[PASS] P2.14-chart-count" in text
    assert render(report, "json").endswith("\n")


# ---------- 설정 ----------
@pytest.mark.parametrize(
    "name,kw",
    [
        ("closure", {"p": 2}),
        ("char2", {"p": 3}),
        ("count", {"a": 2, "b": 1}),
        ("count", {"p": 3, "q_list": "4"}),
        ("count", {"p": 4}),
        ("count", {"p": 3, "case": CASE1}),
        ("hasse", {"p": 11}),
        ("weights", {"a": 0}),
    ],
)
def test_invalid_configs(name, kw):
    with pytest.raises(ConfigError):
        build_config(name, **kw)


def test_config_file_and_precedence(tmp_path, monkeypatch):
    path = tmp_path / "lab.env"
    path.write_text("a=1\nb=2\nq=3,5\nseed=4\n", encoding="utf-8")
    monkeypatch.setenv("LAB_SEED", "11")
    monkeypatch.setenv("LAB_SAMPLES", "7")
    cfg = build_config("count", str(path), b=3)
    assert (cfg.a, cfg.b) == (1, 3)
    assert cfg.q_list == [3, 5]
    assert cfg.seed == 4
    assert cfg.samples == 7


def test_default_q_list_covers_largest_dimension():
    assert build_config("count", a=1, b=1, p=3).resolved_q_list == [3, 5, 7]
    assert build_config("count", a=1, b=2, p=3).resolved_q_list == [3, 5, 7, 9]
    assert build_config("count", a=2, b=2, p=3).resolved_q_list == [3, 5, 7, 9, 11, 13]
    assert build_config("count", a=1, b=1, p=2).resolved_q_list == [2, 4, 8]
    assert build_config("count", a=2, b=2, p=3, q_list="5,3").resolved_q_list == [3, 5]


def test_samples_default_per_campaign():
    assert build_config("closure").resolved_samples == 200
    assert build_config("hasse").resolved_samples >= HASSE_MIN_DATA
    assert build_config("hasse", samples=50).resolved_samples == 50


def test_missing_config_file():
    with pytest.raises(ConfigError):
        build_config("count", "/nonexistent/lab.env")


def test_bad_environment_value(monkeypatch):
    monkeypatch.setenv("LAB_SEED", "abc")
    with pytest.raises(ConfigError):
        build_config("count")


def test_budget_is_enforced():
    with pytest.raises(BudgetExceeded):
        _run("count", a=1, b=1, p=3, budget=3)
