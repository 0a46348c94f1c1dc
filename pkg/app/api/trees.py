from fastapi import APIRouter, HTTPException, Query

from app.models.compute import TreeListResponse, TreeSignResponse
from app.services.compute_service import compute_service

router = APIRouter(prefix="/api/trees", tags=["Trees"])


@router.get(
    "/{n}",
    response_model=TreeListResponse,
    summary="잎 n 개의 {2,3}-차 평면 나무 목록",
)
async def list_trees(n: int):
    try:
        return compute_service.list_trees(n)
    except ValueError as exc:
        raise HTTPException(status_code=400, detail=str(exc)) from exc


@router.get(
    "/{n}/signs",
    response_model=TreeSignResponse,
    summary="나무별 전이 부호 (koszul / printed) 와 α/β 단계",
)
async def tree_signs(n: int, degrees: str = Query(..., description="쉼표로 구분한 입력 차수, 예: 1,-2,0")):
    try:
        parsed = tuple(int(part) for part in degrees.split(",") if part.strip())
        return compute_service.tree_signs(n, parsed)
    except ValueError as exc:
        raise HTTPException(status_code=400, detail=str(exc)) from exc
