# tests/test_cli.py
import json

import pytest

from app import cli
from app.services.archive import list_runs


def test_passing_run_prints_canonical_json(capsys):
    code = cli.main(["chart", "--a", "1", "--b", "1", "--p", "3", "--q", "3,5,7"])
    assert code == cli.EXIT_OK
    out = capsys.readouterr().out
    report = json.loads(out)
    assert report["passed"] is True
    assert report["data"]["counts"]["7"] == 13


def test_output_file_and_format(tmp_path, capsys):
    target = tmp_path / "chart.csv"
    code = cli.main(["chart", "--a", "1", "--b", "1", "--q", "3,5,7", "--format", "csv", "-o", str(target)])
    assert code == cli.EXIT_OK
    assert capsys.readouterr().out == ""
    assert target.read_text(encoding="utf-8").startswith("a,b,q,count\n")


def test_config_error_exit_code(capsys):
    assert cli.main(["closure", "--p", "2"]) == cli.EXIT_USAGE
    assert capsys.readouterr().out == ""


def test_budget_exit_code():
    assert cli.main(["count", "--a", "1", "--b", "1", "--budget", "3"]) == cli.EXIT_BUDGET


def test_config_file_option(tmp_path, capsys):
    conf = tmp_path / "lab.env"
    conf.write_text("a=1\nb=2\nformat=text\n", encoding="utf-8")
    assert cli.main(["tangent", "--config", str(conf)]) == cli.EXIT_OK
    assert "all checks passed" in capsys.readouterr().out


def test_archive_flag(tmp_db, capsys):
    assert cli.main(["cmindex", "--legs", "1:1", "--archive"]) == cli.EXIT_OK
    runs = list_runs()
    assert len(runs) == 1
    assert runs[0]["campaign"] == "cmindex"


def test_unknown_subcommand():
    with pytest.raises(SystemExit) as exc:
        cli.main(["frobnicate"])
    assert exc.value.code == 2


def test_version(capsys):
    with pytest.raises(SystemExit):
        cli.main(["--version"])
    assert "splitlab" in capsys.readouterr().out
