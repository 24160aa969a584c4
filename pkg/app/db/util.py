# app/db/util.py
import os
import sqlite3
from contextlib import contextmanager
from pathlib import Path
from typing import Iterator, Optional

DEFAULT_DB_PATH = "app/db/splitlab.db"

# 테스트 등에서 직접 지정하면 LAB_DB_PATH 보다 우선
DB_PATH: Optional[str] = None


def db_path() -> str:
    """실행 기록 보관소 경로 (호출 시점의 DB_PATH → LAB_DB_PATH → 기본값)"""
    return DB_PATH or os.getenv("LAB_DB_PATH") or DEFAULT_DB_PATH


@contextmanager
def get_conn(path: Optional[str] = None) -> Iterator[sqlite3.Connection]:
    """
    실행 기록 SQLite 연결
    - path 를 안 주면 db_path()
    - 상위 폴더가 없으면 만든다
    - row_factory=sqlite3.Row, 자동 commit / rollback / close
    """
    target = path or db_path()
    if target != ":memory:":
        Path(target).parent.mkdir(parents=True, exist_ok=True)
    conn = sqlite3.connect(target, check_same_thread=False)
    conn.row_factory = sqlite3.Row

    try:
        yield conn
        conn.commit()
    except Exception:
        conn.rollback()
        raise
    finally:
        conn.close()
