from typing import Optional

from fastapi import APIRouter, HTTPException, Query

from app.models.compute import AbelianOp, AbelianRequest, AbelianResponse, AbelianTableResponse
from app.services.abelian_service import abelian_service

router = APIRouter(prefix="/api/abelian", tags=["Abelian"])


@router.post(
    "/{op}",
    response_model=AbelianResponse,
    summary="아벨군 닫힌 형태 m̂′ 계산",
)
async def closed_form(op: AbelianOp, request: AbelianRequest):
    try:
        return abelian_service.compute(op, request)
    except ValueError as exc:
        raise HTTPException(status_code=400, detail=str(exc)) from exc


@router.get(
    "/{group}/table",
    response_model=AbelianTableResponse,
    summary="기저 전체에 대한 m̂′ 표",
)
async def closed_form_table(
    group: str,
    op: AbelianOp = Query(AbelianOp.M2),
    degrees: str = Query(..., description="쉼표로 구분한 입력 차수"),
    field: Optional[str] = Query(None),
):
    try:
        parsed = [int(part) for part in degrees.split(",") if part.strip()]
        return abelian_service.table(group, op, parsed, field)
    except ValueError as exc:
        raise HTTPException(status_code=400, detail=str(exc)) from exc
