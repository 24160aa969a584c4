# app/routers/exports.py
from fastapi import APIRouter, HTTPException, Path
from fastapi.responses import StreamingResponse

from app.services.archive import get_run
from app.services.reports import iter_csv

router = APIRouter(prefix="/exports", tags=["exports"])


@router.get("/runs/{run_id}.csv")
def export_run_csv(run_id: int = Path(..., ge=1)):
    """
    보관된 실행의 표 데이터를 CSV로 내보내기

    파일명 예시:
      splitlab_count_run12.csv
    표가 없는 보고서는 검사 목록(check, passed, detail)을 내보냄
    """
    report = get_run(run_id)
    if report is None:
        raise HTTPException(status_code=404, detail="run not found")

    filename = f"splitlab_{report['config']['subcommand']}_run{run_id}.csv"

    def iter_rows():
        # 엑셀 한글 깨짐 방지용 BOM
        yield "\ufeff"
        yield from iter_csv(report)

    return StreamingResponse(
        iter_rows(),
        media_type="text/csv; charset=utf-8",
        headers={"Content-Disposition": f'attachment; filename="{filename}"'},
    )
