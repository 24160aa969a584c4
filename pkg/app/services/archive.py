# app/services/archive.py
"""캠페인 보고서를 SQLite runs 테이블에 보관/조회"""

import hashlib
import json
import logging
from typing import Any, Dict, List, Optional

from app.db.init_db import apply_schema
from app.db.util import get_conn
from app.services.reports import canonical_json

logger = logging.getLogger(__name__)


def ensure_runs_table() -> None:
    with get_conn() as conn:
        apply_schema(conn)


def save_run(report: Dict[str, Any]) -> int:
    ensure_runs_table()
    body = canonical_json(report)
    config = report["config"]
    with get_conn() as conn:
        cur = conn.execute(
            """
            INSERT INTO runs (campaign, seed, passed, config_json, report_json, report_hash)
            VALUES (?, ?, ?, ?, ?, ?)
            """,
            (
                config["subcommand"],
                int(report["seed"]),
                1 if report["passed"] else 0,
                canonical_json(config),
                body,
                hashlib.sha256(body.encode("utf-8")).hexdigest(),
            ),
        )
        run_id = int(cur.lastrowid)
    logger.info("archived %s run as #%d", config["subcommand"], run_id)
    return run_id


def list_runs(campaign: Optional[str] = None, limit: int = 50) -> List[Dict[str, Any]]:
    ensure_runs_table()
    sql = "SELECT id, campaign, seed, passed, report_hash, created_at FROM runs"
    params: list = []
    if campaign:
        sql += " WHERE campaign = ?"
        params.append(campaign)
    sql += " ORDER BY id DESC LIMIT ?"
    params.append(limit)
    with get_conn() as conn:
        rows = conn.execute(sql, params).fetchall()
    return [
        {
            "id": r["id"],
            "campaign": r["campaign"],
            "seed": r["seed"],
            "passed": bool(r["passed"]),
            "report_hash": r["report_hash"],
            "created_at": r["created_at"],
        }
        for r in rows
    ]


def get_run(run_id: int) -> Optional[Dict[str, Any]]:
    """없으면 None"""
    ensure_runs_table()
    with get_conn() as conn:
        row = conn.execute("SELECT report_json FROM runs WHERE id = ?", (run_id,)).fetchone()
    if row is None:
        return None
    return json.loads(row["report_json"])
