# app/routers/campaigns.py
import logging
from typing import List, Optional

from fastapi import APIRouter, HTTPException, Path, Query
from pydantic import BaseModel, Field

from app.algebra.errors import BudgetExceeded, LabError
from app.services.archive import get_run, list_runs, save_run
from app.services.campaigns import run_campaign
from app.services.settings import SUBCOMMANDS, ConfigError, build_config

logger = logging.getLogger(__name__)

router = APIRouter(prefix="/campaigns", tags=["campaigns"])


# ---------- Pydantic Schemas ----------
class CampaignIn(BaseModel):
    """CLI 플래그와 같은 이름. 비워 두면 환경 변수 기본값 사용."""

    a: Optional[int] = None
    b: Optional[int] = None
    p: Optional[int] = None
    f: Optional[int] = None
    case: Optional[str] = None
    n: Optional[int] = None
    N: Optional[int] = None
    q_list: Optional[List[int]] = None
    legs: Optional[List[List[int]]] = None
    seed: Optional[int] = None
    budget: Optional[int] = None
    samples: Optional[int] = None
    weight_range: Optional[int] = None
    archive: bool = True


class RunSummary(BaseModel):
    id: int
    campaign: str
    seed: int
    passed: bool
    report_hash: str
    created_at: str


class CampaignOut(BaseModel):
    run_id: Optional[int] = Field(None, description="archive=false 이면 null")
    passed: bool
    report: dict


@router.get("/", response_model=List[str])
def list_campaigns():
    return list(SUBCOMMANDS)


# 고정 경로(/runs)를 /{name} 보다 먼저 등록
@router.get("/runs", response_model=List[RunSummary])
def runs(
    campaign: Optional[str] = Query(None, description="캠페인 이름으로 필터"),
    limit: int = Query(50, ge=1, le=500),
):
    return list_runs(campaign, limit)


@router.get("/runs/{run_id}")
def run_detail(run_id: int = Path(..., ge=1)):
    report = get_run(run_id)
    if report is None:
        raise HTTPException(status_code=404, detail="run not found")
    return report


@router.post("/{name}", response_model=CampaignOut)
def start_campaign(name: str, body: Optional[CampaignIn] = None):
    body = body or CampaignIn()
    if name not in SUBCOMMANDS:
        raise HTTPException(status_code=404, detail=f"unknown campaign '{name}'")

    overrides = body.model_dump(exclude_none=True, exclude={"archive"})
    if "legs" in overrides:
        overrides["legs"] = [tuple(leg) for leg in overrides["legs"]]

    try:
        cfg = build_config(name, **overrides)
        report = run_campaign(cfg)
    except ConfigError as e:
        raise HTTPException(status_code=422, detail=str(e))
    except BudgetExceeded as e:
        raise HTTPException(status_code=413, detail=str(e))
    except LabError as e:
        logger.exception("campaign %s aborted", name)
        raise HTTPException(status_code=400, detail=str(e))

    run_id = save_run(report) if body.archive else None
    return {"run_id": run_id, "passed": report["passed"], "report": report}
