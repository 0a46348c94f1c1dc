# app/services/group_service.py
from __future__ import annotations

import logging
from threading import Lock
from typing import Dict, Optional, Sequence

from app.core.config import settings
from app.core.exceptions import GroupValidationError, UnknownPresetError
from app.models.group import GroupInfoResponse, GroupValidateRequest, PresetListResponse
from app.utils.fgroup import PRESET_NAMES, FiniteGroup, conjugacy, preset
from app.utils.scalars import FieldSpec

logger = logging.getLogger(__name__)


class GroupService:
    """프리셋 / 사용자 정의 군 조회와 등록 (세션 단위 인메모리)"""

    def __init__(self) -> None:
        self._registered: Dict[str, FiniteGroup] = {}
        self._lock = Lock()

    # ==================== 조회 ====================

    def resolve(self, name: Optional[str] = None, table: Optional[Sequence[Sequence[int]]] = None) -> FiniteGroup:
        """곱셈표가 있으면 검증해서 쓰고, 없으면 등록된 이름 → 프리셋 순으로 찾는다"""
        if table is not None:
            group = FiniteGroup.from_table(table, name or "G")
        else:
            label = name or settings.default_group
            with self._lock:
                group = self._registered.get(label)
            if group is None:
                group = preset(label)
        if group.order > settings.max_group_order:
            raise GroupValidationError(f"군의 위수 {group.order} 가 설정 상한 {settings.max_group_order} 를 넘습니다")
        return group

    def field(self, label: Optional[str] = None) -> FieldSpec:
        return FieldSpec.parse(label or settings.default_field)

    def info(self, name: Optional[str] = None, table: Optional[Sequence[Sequence[int]]] = None) -> GroupInfoResponse:
        group = self.resolve(name, table)
        return GroupInfoResponse.from_data(conjugacy(group))

    def list_presets(self) -> PresetListResponse:
        with self._lock:
            registered = sorted(self._registered)
        return PresetListResponse(presets=list(PRESET_NAMES), registered=registered)

    # ==================== 등록 ====================

    def validate(self, request: GroupValidateRequest) -> GroupInfoResponse:
        group = FiniteGroup.from_table(request.table, request.name)
        if request.order is not None and request.order != group.order:
            raise GroupValidationError(f"order={request.order} 가 곱셈표 크기 {group.order} 와 다릅니다")
        if request.register:
            self.register(group)
        return GroupInfoResponse.from_data(conjugacy(group))

    def register(self, group: FiniteGroup) -> None:
        try:
            preset(group.name)
        except UnknownPresetError:
            pass
        else:
            raise GroupValidationError(f"프리셋 이름은 등록할 수 없습니다: {group.name}")
        with self._lock:
            self._registered[group.name] = group
        logger.info("사용자 정의 군 등록: %s (order=%d)", group.name, group.order)


group_service = GroupService()
