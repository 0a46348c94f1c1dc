# app/services/abelian_service.py
from __future__ import annotations

import logging
from itertools import product
from threading import Lock
from typing import Dict, Optional, Sequence, Tuple

from app.core.exceptions import DegreeError
from app.models.compute import AbelianOp, AbelianRequest, AbelianResponse, AbelianTableEntry, AbelianTableResponse
from app.models.element import AbelianCochainModel
from app.services.group_service import group_service
from app.utils.abelian import AbelianClosedForms
from app.utils.fgroup import FiniteGroup
from app.utils.scalars import FieldSpec

logger = logging.getLogger(__name__)

_ARITY = {AbelianOp.M1: 1, AbelianOp.M2: 2, AbelianOp.M3: 3}


class AbelianService:
    """아벨군 닫힌 형태 계산과 기저 표 생성"""

    def __init__(self) -> None:
        self._forms: Dict[Tuple[FiniteGroup, FieldSpec], AbelianClosedForms] = {}
        self._lock = Lock()

    def forms(self, group: FiniteGroup, spec: FieldSpec) -> AbelianClosedForms:
        with self._lock:
            cached = self._forms.get((group, spec))
        if cached is not None:
            return cached
        forms = AbelianClosedForms(group, spec)
        with self._lock:
            self._forms[(group, spec)] = forms
        return forms

    def compute(self, op: AbelianOp, request: AbelianRequest) -> AbelianResponse:
        group = group_service.resolve(request.group, request.table)
        spec = group_service.field(request.field)
        forms = self.forms(group, spec)
        inputs = [m.to_element(forms) for m in request.inputs]
        if op is AbelianOp.TENSOR:
            labels = [m.label if m.label is not None else group.identity for m in request.inputs]
            label, result = forms.tensor_structure(len(inputs), list(zip(labels, inputs)))
            return AbelianResponse(op=op, group=group.name, field=spec.label, label=label, result=AbelianCochainModel.from_element(result, label))
        arity = _ARITY[op]
        if len(inputs) != arity:
            raise DegreeError(f"{op.value} 에는 입력 {arity} 개가 필요합니다 (받은 개수 {len(inputs)})")
        result = forms.mhat_closed(arity, inputs)
        return AbelianResponse(op=op, group=group.name, field=spec.label, result=AbelianCochainModel.from_element(result))

    def table(self, group_name: str, op: AbelianOp, degrees: Sequence[int], field: Optional[str] = None) -> AbelianTableResponse:
        """주어진 차수 조합의 모든 기저 입력에 대한 m̂′ 값"""
        if op is AbelianOp.TENSOR:
            raise DegreeError("표는 m1 / m2 / m3 에 대해서만 만듭니다")
        arity = _ARITY[op]
        if len(degrees) != arity:
            raise DegreeError(f"{op.value} 표에는 차수 {arity} 개가 필요합니다")
        group = group_service.resolve(group_name)
        spec = group_service.field(field)
        forms = self.forms(group, spec)
        entries = []
        for keys in product(*(list(forms.basis(d)) for d in degrees)):
            inputs = [forms.basis_element(k, d) for k, d in zip(keys, degrees)]
            out = forms.mhat_closed(arity, inputs)
            entries.append(AbelianTableEntry(inputs=[list(k) for k in keys], output=AbelianCochainModel.from_element(out)))
        logger.info("아벨 표 생성: %s %s %s, %d 개 항목", group.name, op.value, list(degrees), len(entries))
        return AbelianTableResponse(group=group.name, field=spec.label, op=op, degrees=list(degrees), entries=entries)


abelian_service = AbelianService()
