# app/models/group.py
"""군 / 켤레류 관련 Pydantic 모델"""

from __future__ import annotations

from typing import List, Optional

from pydantic import BaseModel, Field

from app.utils.fgroup import ConjugacyData, FiniteGroup


class GroupModel(BaseModel):
    """곱셈표 JSON: {"name", "order", "table"}"""
    name: str = "G"
    order: Optional[int] = Field(None, ge=1)
    table: List[List[int]]

    @classmethod
    def from_group(cls, group: FiniteGroup) -> "GroupModel":
        return cls(name=group.name, order=group.order, table=[list(row) for row in group.table])


class ConjugacyClassInfo(BaseModel):
    rep: int
    members: List[int]
    centralizer: List[int]
    centralizer_order: int
    coset_reps: List[int]


class GroupInfoResponse(BaseModel):
    success: bool = True
    name: str
    order: int
    identity: int
    abelian: bool
    class_sizes: List[int]
    classes: List[ConjugacyClassInfo]

    @classmethod
    def from_data(cls, cd: ConjugacyData) -> "GroupInfoResponse":
        G = cd.group
        classes = [
            ConjugacyClassInfo(
                rep=x,
                members=list(cd.classes[x]),
                centralizer=list(cd.centralizers[x]),
                centralizer_order=len(cd.centralizers[x]),
                coset_reps=list(cd.coset_reps[x]),
            )
            for x in cd.reps
        ]
        return cls(
            name=G.name,
            order=G.order,
            identity=G.identity,
            abelian=G.is_abelian,
            class_sizes=[len(cd.classes[x]) for x in cd.reps],
            classes=classes,
        )


class PresetListResponse(BaseModel):
    success: bool = True
    presets: List[str]
    registered: List[str] = Field(default_factory=list, description="세션 중 등록된 사용자 정의 군")


class GroupValidateRequest(GroupModel):
    register: bool = Field(False, description="검증 후 이름으로 등록할지 여부")
