# app/services/settings.py
"""
실행 설정 (RunConfig)

우선순위: 명령행 플래그 > key=value 설정 파일 > 환경 변수 기본값
- 환경 변수: LAB_SEED, LAB_BUDGET, LAB_TRUNCATION, LAB_FORMAT, LAB_SAMPLES
- 설정 파일은 dotenv 형식 (dotenv_values 로 읽음)
"""

import os
from pathlib import Path
from typing import Any, Dict, List, Literal, Optional, Tuple

from dotenv import dotenv_values, load_dotenv
from pydantic import BaseModel, Field, ValidationError, field_validator, model_validator

from app.algebra.errors import FieldError, LabError
from app.algebra.field import MAX_DEGREE, PRIMES, prime_power
from app.algebra.localmodel import dim_formula, labels
from app.algebra.pimodule import CASE1, CASES, ODD

load_dotenv()

SUBCOMMANDS = ("count", "closure", "tangent", "char2", "weights", "hasse", "cmindex", "chart")
FORMATS = ("json", "csv", "text")

# 기본 q 목록 후보 (지원하는 홀수 표수 체, 크기순)
ODD_Q_SIZES = sorted(p ** f for p in PRIMES if p != 2 for f in range(1, MAX_DEGREE + 1))
CHAR2_Q_SIZES = [2 ** f for f in range(1, MAX_DEGREE + 1)]

DEFAULT_SAMPLES = 200
# hasse 는 (n, q) 마다 자료 1000 개 이상이 목표라 거절 여유를 둔다
HASSE_DEFAULT_SAMPLES = 1200

# 설정 파일/플래그 이름 → 필드 이름
ALIASES = {"q": "q_list", "range": "weight_range", "format": "fmt", "truncation": "N"}


class ConfigError(LabError):
    """설정 검증 실패 (CLI 종료 코드 2, HTTP 422)"""


def _env_int(name: str, default: int) -> int:
    raw = os.getenv(name)
    if raw is None or raw == "":
        return default
    try:
        return int(raw)
    except ValueError:
        raise ConfigError(f"environment variable {name}={raw!r} is not an integer") from None


def env_defaults() -> Dict[str, Any]:
    values = {
        "seed": _env_int("LAB_SEED", 0),
        "budget": _env_int("LAB_BUDGET", 5_000_000),
        "N": _env_int("LAB_TRUNCATION", 6),
        "fmt": os.getenv("LAB_FORMAT", "json"),
    }
    # 비워 두면 캠페인별 기본값 (resolved_samples)
    if os.getenv("LAB_SAMPLES"):
        values["samples"] = _env_int("LAB_SAMPLES", DEFAULT_SAMPLES)
    return values


def _split_ints(value: Any) -> Any:
    if isinstance(value, str):
        return [int(x) for x in value.replace(" ", "").split(",") if x]
    return value


class RunConfig(BaseModel):
    subcommand: Literal["count", "closure", "tangent", "char2", "weights", "hasse", "cmindex", "chart"]
    a: int = Field(1, ge=0, le=5)
    b: int = Field(1, ge=0, le=6)
    p: int = 3
    f: int = Field(1, ge=1, le=MAX_DEGREE)
    case: Optional[str] = None
    n: int = Field(1, ge=1, le=3)
    N: int = Field(6, ge=2, le=16)
    q_list: List[int] = Field(default_factory=list)
    legs: List[Tuple[int, int]] = Field(default_factory=list)
    seed: int = 0
    budget: int = Field(5_000_000, ge=1)
    samples: Optional[int] = Field(None, ge=0)
    weight_range: int = Field(2, ge=0, le=6)
    output: Optional[str] = None
    fmt: Literal["json", "csv", "text"] = "json"
    archive: bool = False

    # ---------- 필드 검증 ----------
    @field_validator("p")
    @classmethod
    def _check_prime(cls, v: int) -> int:
        if v not in PRIMES:
            raise ValueError(f"p must be one of {PRIMES}")
        return v

    @field_validator("q_list", mode="before")
    @classmethod
    def _parse_q_list(cls, v: Any) -> Any:
        return _split_ints(v)

    @field_validator("q_list")
    @classmethod
    def _check_q_list(cls, v: List[int]) -> List[int]:
        for q in v:
            try:
                p, f = prime_power(q)
            except FieldError as e:
                raise ValueError(str(e)) from e
            if p not in PRIMES or f > MAX_DEGREE:
                raise ValueError(f"q={q} is outside the supported fields")
        return sorted(set(v))

    @field_validator("legs", mode="before")
    @classmethod
    def _parse_legs(cls, v: Any) -> Any:
        # "1:1,2:3" 형식
        if isinstance(v, str):
            out = []
            for part in v.replace(" ", "").split(","):
                if not part:
                    continue
                a, _, b = part.partition(":")
                out.append((int(a), int(b)))
            return out
        return v

    @field_validator("case")
    @classmethod
    def _check_case(cls, v: Optional[str]) -> Optional[str]:
        if v is not None and v not in CASES:
            raise ValueError(f"case must be one of {CASES}")
        return v

    @model_validator(mode="after")
    def _check_combination(self) -> "RunConfig":
        if self.subcommand in ("count", "closure", "tangent", "chart") and not 1 <= self.a <= self.b:
            raise ValueError("need 1 <= a <= b")
        if self.subcommand in ("closure", "tangent", "chart") and self.p == 2:
            raise ValueError(f"{self.subcommand} needs odd characteristic")
        if self.subcommand == "char2" and self.p != 2:
            raise ValueError("char2 needs p = 2")
        if self.subcommand == "weights" and (self.a < 1 or self.a > 5 or self.b > 5):
            raise ValueError("weights needs 1 <= a <= 5 and b <= 5")
        if self.subcommand == "hasse" and self.q > 9:
            raise ValueError("hasse search needs q <= 9")
        if self.case is not None and (self.case == ODD) != (self.p != 2):
            raise ValueError(f"case '{self.case}' does not match p={self.p}")
        for q in self.q_list:
            if (q % 2 == 0) != (self.p == 2):
                raise ValueError(f"q={q} has the wrong characteristic for p={self.p}")
        return self

    # ---------- 파생 값 ----------
    @property
    def q(self) -> int:
        return self.p ** self.f

    @property
    def resolved_case(self) -> str:
        if self.case:
            return self.case
        return ODD if self.p != 2 else CASE1

    @property
    def resolved_q_list(self) -> List[int]:
        """
        지정이 없으면 가장 큰 차원 d 에 대해 차수 확인이 가능한 d + 2 개의 q.
        표수 2 는 지원하는 체가 2, 4, 8 뿐이다.
        """
        if self.q_list:
            return self.q_list
        if self.p == 2:
            return list(CHAR2_Q_SIZES)
        top = max(dim_formula(self.a, self.b, c.h, c.l) for c in labels(self.a))
        return ODD_Q_SIZES[: max(3, top + 2)]

    @property
    def resolved_samples(self) -> int:
        if self.samples is not None:
            return self.samples
        return HASSE_DEFAULT_SAMPLES if self.subcommand == "hasse" else DEFAULT_SAMPLES

    @property
    def resolved_legs(self) -> List[Tuple[int, int]]:
        return list(self.legs) or [(self.a, self.b)]

    def echo(self) -> Dict[str, Any]:
        """보고서에 그대로 실리는 설정 (출력 경로/형식은 결과에 영향이 없어 제외)"""
        data = self.model_dump(exclude={"output", "fmt", "archive"})
        data["legs"] = [list(leg) for leg in data["legs"]]
        data["case"] = self.resolved_case
        data["samples"] = self.resolved_samples
        return data


def load_config_file(path: str) -> Dict[str, str]:
    p = Path(path)
    if not p.exists():
        raise ConfigError(f"config file not found: {path}")
    values = dotenv_values(p)
    out = {}
    for key, value in values.items():
        if value is None:
            continue
        key = key.strip()
        out[ALIASES.get(key, key)] = value
    return out


def build_config(subcommand: str, config_file: Optional[str] = None, **overrides: Any) -> RunConfig:
    values: Dict[str, Any] = env_defaults()
    if config_file:
        values.update(load_config_file(config_file))
    values.update({k: v for k, v in overrides.items() if v is not None})
    values["subcommand"] = subcommand
    try:
        return RunConfig.model_validate(values)
    except ValidationError as e:
        raise ConfigError(_format_errors(e)) from e


def _format_errors(e: ValidationError) -> str:
    parts = []
    for err in e.errors():
        loc = ".".join(str(x) for x in err.get("loc", ())) or "config"
        parts.append(f"{loc}: {err.get('msg')}")
    return "; ".join(parts)

