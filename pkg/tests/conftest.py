# tests/conftest.py
import pytest

from app.algebra.field import get_field
from app.db import util


@pytest.fixture
def F3():
    return get_field(3)


@pytest.fixture
def F2():
    return get_field(2)


@pytest.fixture
def tmp_db(tmp_path, monkeypatch):
    """보관소를 임시 SQLite 파일로 교체"""
    path = tmp_path / "runs.db"
    monkeypatch.setattr(util, "DB_PATH", str(path))
    return path


@pytest.fixture(autouse=True)
def _clean_lab_env(monkeypatch):
    # 개발자 .env 값이 테스트 결과를 바꾸지 않게
    for name in ("LAB_SEED", "LAB_BUDGET", "LAB_TRUNCATION", "LAB_SAMPLES", "LAB_FORMAT"):
        monkeypatch.delenv(name, raising=False)
