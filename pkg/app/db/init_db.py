# app/db/init_db.py
"""
실행 보관소 DB 초기화 스크립트

- 개발 환경에서만 실행 가능 (PROD 환경에서는 자동 차단)
- 기존 DB가 있을 경우 절대 덮어쓰지 않음
- 스키마 파일 서명(해시) 확인
"""

import hashlib
import os
import sqlite3
from pathlib import Path
from typing import Optional

from dotenv import load_dotenv

from app.db import util

load_dotenv()

# --- 환경 변수 ---
APP_ENV = os.getenv("APP_ENV", "dev").lower()
SCHEMA_PATH = Path(__file__).with_name("schema.sql")


def file_sha256(path: Path) -> str:
    """파일의 SHA-256 해시값 계산"""
    h = hashlib.sha256()
    with open(path, "rb") as f:
        for chunk in iter(lambda: f.read(8192), b""):
            h.update(chunk)
    return h.hexdigest()


def apply_schema(conn: sqlite3.Connection) -> None:
    """IF NOT EXISTS 스키마라 여러 번 적용해도 안전"""
    if not SCHEMA_PATH.exists():
        raise FileNotFoundError(f"❌ Schema file not found: {SCHEMA_PATH}")
    conn.executescript(SCHEMA_PATH.read_text(encoding="utf-8"))


def init_db(db_path: Optional[str] = None) -> bool:
    db_path = Path(db_path or util.db_path())

    # 1️⃣ 운영환경(PROD)에서는 차단
    if APP_ENV == "prod":
        print("🚫 Production 환경에서는 init_db 실행이 차단되었습니다.")
        return False

    # 2️⃣ 기존 DB가 존재하면 중단
    if db_path.exists():
        print(f"⚠️ DB already exists at {db_path}. Initialization aborted.")
        return False

    schema_hash = file_sha256(SCHEMA_PATH)
    print(f"🔍 Schema verified. SHA-256: {schema_hash[:12]}...")

    # 3️⃣ DB 생성 및 스키마 적용
    db_path.parent.mkdir(parents=True, exist_ok=True)
    conn = sqlite3.connect(db_path)
    try:
        apply_schema(conn)
        conn.commit()
        print(f"✅ DB initialized successfully at {db_path}")
    finally:
        conn.close()
    return True


if __name__ == "__main__":
    init_db()
