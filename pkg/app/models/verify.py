# app/models/verify.py
"""검증 요청 / 보고서 모델"""

from __future__ import annotations

from enum import Enum
from typing import Any, List, Literal, Optional, Tuple

from pydantic import BaseModel, Field, model_validator


class CheckName(str, Enum):
    COMPLEX = "complex"
    RETRACT = "retract"
    LEIBNIZ = "leibniz"
    M2 = "m2"
    STASHEFF = "stasheff"
    TRANSFERRED = "transferred"
    ABELIAN = "abelian"
    SIGNS = "signs"
    FLOWCHART = "flowchart"


class VerifyRequest(BaseModel):
    group: Optional[str] = None
    table: Optional[List[List[int]]] = Field(None, description="사용자 정의 곱셈표")
    field: Optional[str] = None
    window: Optional[Tuple[int, int]] = Field(None, description="차수 구간 [lo, hi] (없으면 검사별 기본값)")
    seed: Optional[int] = None
    samples: Optional[int] = Field(None, ge=1)
    levels: List[int] = Field(default_factory=lambda: [1, 2, 3, 4], description="Stasheff 관계식 n 목록")
    policy: Optional[Literal["koszul", "printed"]] = None

    @model_validator(mode="after")
    def _check_window(self) -> "VerifyRequest":
        if self.window is None:
            return self
        lo, hi = self.window
        if lo > hi:
            raise ValueError(f"window 의 lo({lo}) 가 hi({hi}) 보다 큽니다")
        return self


class FailureModel(BaseModel):
    identity: str
    witness: Any = None
    detail: str = ""


class CheckReportModel(BaseModel):
    check: str
    group: str
    field: str
    window: List[int]
    seed: Optional[int] = None
    passed: bool
    cases: int
    exhaustive: bool = True
    failure_count: int = 0
    failures: List[FailureModel] = Field(default_factory=list)
    notes: List[str] = Field(default_factory=list)


class VerifySummary(BaseModel):
    success: bool = True
    passed: bool
    reports: List[CheckReportModel]
