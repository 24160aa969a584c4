# tests/test_archive.py
import hashlib

from app.db import init_db as init
from app.services.archive import get_run, list_runs, save_run
from app.services.campaigns import run_campaign
from app.services.reports import canonical_json
from app.services.settings import build_config


def _report(**kw):
    return run_campaign(build_config("cmindex", **kw))


def test_init_db_creates_once(tmp_path):
    target = tmp_path / "nested" / "runs.db"
    assert init.init_db(str(target)) is True
    assert target.exists()
    assert init.init_db(str(target)) is False


def test_init_db_blocked_in_prod(tmp_path, monkeypatch):
    monkeypatch.setattr(init, "APP_ENV", "prod")
    target = tmp_path / "runs.db"
    assert init.init_db(str(target)) is False
    assert not target.exists()


def test_save_list_get(tmp_db):
    first = save_run(_report(legs="1:1"))
    second_report = _report(legs="1:1,1:2", seed=3)
    second = save_run(second_report)
    assert second > first

    runs = list_runs()
    assert [r["id"] for r in runs] == [second, first]
    assert runs[0]["seed"] == 3
    assert runs[0]["passed"] is True
    assert runs[0]["report_hash"] == hashlib.sha256(canonical_json(second_report).encode("utf-8")).hexdigest()
    assert list_runs(limit=1)[0]["id"] == second
    assert list_runs(campaign="count") == []

    assert get_run(second) == second_report
    assert get_run(999) is None


def test_archive_path_follows_environment_at_call_time(tmp_path, monkeypatch):
    target = tmp_path / "env" / "runs.db"
    monkeypatch.setenv("LAB_DB_PATH", str(target))
    run_id = save_run(_report(legs="1:1"))
    assert target.exists()
    assert get_run(run_id)["config"]["subcommand"] == "cmindex"
