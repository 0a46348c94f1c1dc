# app/models/compute.py
"""계산 요청 / 응답 모델"""

from __future__ import annotations

from enum import Enum
from typing import Dict, List, Literal, Optional

from pydantic import BaseModel, Field

from app.models.element import AbelianCochainModel, DecomposedElementModel, TateElementModel


class ComputeOp(str, Enum):
    DIFF = "diff"
    CUP = "cup"
    M3 = "m3"
    MHAT = "mhat"
    DECOMPOSE = "decompose"
    IOTA = "iota"
    RHO = "rho"
    S = "s"


class AbelianOp(str, Enum):
    M1 = "m1"
    M2 = "m2"
    M3 = "m3"
    TENSOR = "tensor"


class GroupSelector(BaseModel):
    """프리셋 이름 또는 곱셈표 중 하나로 군을 지정"""
    group: Optional[str] = Field(None, description="프리셋 이름 (Z4, S3, product(Z2,Z3) ...)")
    table: Optional[List[List[int]]] = Field(None, description="사용자 정의 곱셈표")
    field: Optional[str] = Field(None, description="계수체 (기본값은 설정의 default_field)")


class ComputeRequest(GroupSelector):
    elements: List[TateElementModel] = Field(default_factory=list, description="𝒟* 입력")
    decomposed: List[DecomposedElementModel] = Field(default_factory=list, description="⊕_x Ĉ*(C_G(x)) 입력")
    n: Optional[int] = Field(None, ge=1, description="mhat 의 입력 개수 (기본: decomposed 개수)")
    policy: Optional[Literal["koszul", "printed"]] = None
    m3_sign: Literal["corrected", "uncorrected"] = "corrected"
    per_tree: bool = Field(False, description="mhat 에서 나무별 기여도 함께 반환")


class ComputeResponse(BaseModel):
    success: bool = True
    op: ComputeOp
    group: str
    field: str
    element: Optional[TateElementModel] = None
    decomposed: Optional[DecomposedElementModel] = None
    components: Dict[int, TateElementModel] = Field(default_factory=dict)
    tree_terms: Dict[str, DecomposedElementModel] = Field(default_factory=dict)


class AbelianRequest(GroupSelector):
    inputs: List[AbelianCochainModel] = Field(default_factory=list)


class AbelianResponse(BaseModel):
    success: bool = True
    op: AbelianOp
    group: str
    field: str
    label: Optional[int] = None
    result: AbelianCochainModel


class AbelianTableEntry(BaseModel):
    inputs: List[List[int]]
    output: AbelianCochainModel


class AbelianTableResponse(BaseModel):
    success: bool = True
    group: str
    field: str
    op: AbelianOp
    degrees: List[int]
    entries: List[AbelianTableEntry]


class TreeListResponse(BaseModel):
    success: bool = True
    n: int
    count: int
    trees: List[str]


class TreeSignEntry(BaseModel):
    tree: str
    koszul: int
    printed: int
    flowchart: List[str]


class TreeSignResponse(BaseModel):
    success: bool = True
    n: int
    degrees: List[int]
    signs: List[TreeSignEntry]
