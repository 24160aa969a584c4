# app/services/reports.py
"""
보고서 조립과 직렬화

- JSON: sort_keys + 최소 구분자 (같은 설정/seed → 바이트 단위로 같은 출력)
- CSV : data["table"] = {"columns": [...], "rows": [[...], ...]}
- text: jinja2 템플릿
"""

import csv
import io
import json
import logging
import math
from fractions import Fraction
from typing import Any, Dict, Iterable, List, Optional

from jinja2 import Environment, StrictUndefined

from app import __version__
from app.services.settings import RunConfig

logger = logging.getLogger(__name__)

TOOL = "splitlab"

_TEXT_TEMPLATE = """\
{{ tool }} {{ version }} :: {{ config.subcommand }} (seed={{ seed }})
{% for key, value in config | dictsort %}  {{ key }} = {{ value }}
{% endfor %}
checks:
{% for c in checks %}  [{{ "PASS" if c.passed is sameas true else ("FAIL" if c.passed is sameas false else "SKIP") }}] {{ c.id }}{% if c.detail %} - {{ c.detail }}{% endif %}
{% endfor %}
{% if failures %}failures: {{ failures | length }}
{% for f in failures %}  - {{ f.id }}: {{ f.detail }}
{% endfor %}{% else %}all checks passed
{% endif %}
{% if table %}
{{ table.columns | join("\t") }}
{% for row in table.rows %}{{ row | join("\t") }}
{% endfor %}{% endif %}"""

_env = Environment(undefined=StrictUndefined, keep_trailing_newline=True)
_text = _env.from_string(_TEXT_TEMPLATE)


# ---------- 검사 목록 ----------
class Checks:
    """명제 id 별 검사 결과. passed=None 은 건너뜀/보고 전용."""

    def __init__(self) -> None:
        self.items: List[Dict[str, Any]] = []

    def add(self, check_id: str, passed: Optional[bool], detail: str = "") -> None:
        self.items.append({"id": check_id, "passed": passed, "detail": detail})
        if passed is False:
            logger.warning("check %s failed: %s", check_id, detail)

    def expect(self, check_id: str, failures: List[str], total: int, noun: str = "cases") -> None:
        """failures 가 비었으면 통과. 앞쪽 몇 개만 detail 에 남긴다."""
        if failures:
            shown = "; ".join(failures[:5])
            more = f" (+{len(failures) - 5} more)" if len(failures) > 5 else ""
            self.add(check_id, False, f"{len(failures)}/{total} {noun} failed: {shown}{more}")
        else:
            self.add(check_id, True, f"{total} {noun}")

    @property
    def failures(self) -> List[Dict[str, Any]]:
        return [c for c in self.items if c["passed"] is False]


# ---------- JSON 변환 ----------
def jsonable(value: Any) -> Any:
    if isinstance(value, float) and math.isinf(value):
        return "inf"
    if isinstance(value, Fraction):
        return str(value) if value.denominator != 1 else int(value)
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, set, frozenset)):
        items = sorted(value) if isinstance(value, (set, frozenset)) else value
        return [jsonable(v) for v in items]
    return value


def build_report(cfg: RunConfig, checks: Checks, data: Dict[str, Any]) -> Dict[str, Any]:
    return jsonable({
        "tool": TOOL,
        "version": __version__,
        "config": cfg.echo(),
        "seed": cfg.seed,
        "checks": checks.items,
        "failures": checks.failures,
        "passed": not checks.failures,
        "data": data,
    })


def table(columns: Iterable[str], rows: Iterable[Iterable[Any]]) -> Dict[str, Any]:
    return {"columns": list(columns), "rows": [list(r) for r in rows]}


# ---------- 직렬화 ----------
def canonical_json(report: Dict[str, Any]) -> str:
    return json.dumps(report, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def _cell(x: Any) -> Any:
    if isinstance(x, (list, dict)):
        return json.dumps(x, sort_keys=True, separators=(",", ":"))
    if isinstance(x, bool):
        return int(x)
    return x


def iter_csv(report: Dict[str, Any]) -> Iterable[str]:
    """표 데이터를 한 줄씩 (StreamingResponse 에서도 사용)"""
    tab = report.get("data", {}).get("table")
    output = io.StringIO()
    writer = csv.writer(output, lineterminator="\n")
    if not tab:
        writer.writerow(["check", "passed", "detail"])
        rows = [[c["id"], c["passed"], c["detail"]] for c in report.get("checks", [])]
    else:
        writer.writerow(tab["columns"])
        rows = tab["rows"]
    yield output.getvalue()
    output.seek(0)
    output.truncate(0)
    for row in rows:
        writer.writerow([_cell(x) for x in row])
        yield output.getvalue()
        output.seek(0)
        output.truncate(0)


def to_csv(report: Dict[str, Any]) -> str:
    return "".join(iter_csv(report))


def render_text(report: Dict[str, Any]) -> str:
    return _text.render(
        tool=report["tool"],
        version=report["version"],
        seed=report["seed"],
        config=report["config"],
        checks=report["checks"],
        failures=report["failures"],
        table=report.get("data", {}).get("table"),
    )


def render(report: Dict[str, Any], fmt: str) -> str:
    if fmt == "csv":
        return to_csv(report)
    if fmt == "text":
        return render_text(report)
    return canonical_json(report) + "\n"
