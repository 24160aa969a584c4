# app/routers/health.py
from fastapi import APIRouter

from app import __version__
from app.db.util import get_conn

router = APIRouter()


@router.get("/health")
def health_check():
    try:
        with get_conn() as conn:  # ✅ 컨텍스트 매니저로 닫힘 보장
            conn.execute("SELECT 1")
        return {"status": "OK", "db": "Connected", "version": __version__}
    except Exception as e:
        return {"status": "Error", "db_error": str(e), "version": __version__}
