# app/main.py
from dotenv import load_dotenv
load_dotenv()

import logging
import os
from contextlib import asynccontextmanager

from fastapi import FastAPI
from fastapi.responses import RedirectResponse

from app import __version__
from app.routers import campaigns, exports, health
from app.services.archive import ensure_runs_table

logging.basicConfig(
    level=os.getenv("LAB_LOG_LEVEL", "INFO").upper(),
    format="%(asctime)s %(levelname)s %(name)s: %(message)s",
)


@asynccontextmanager
async def lifespan(app: FastAPI):
    # ✅ runs 테이블이 없으면 생성 (init_db 없이도 서버 기동 가능)
    ensure_runs_table()
    yield


app = FastAPI(title="SplitLab", version=__version__, lifespan=lifespan)


# ✅ 첫 진입: API 문서로
@app.get("/", include_in_schema=False)
def home():
    return RedirectResponse(url="/docs", status_code=303)


# ✅ 라우터 등록
app.include_router(health.router)
app.include_router(campaigns.router)
app.include_router(exports.router)
