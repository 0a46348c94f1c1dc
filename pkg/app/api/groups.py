from fastapi import APIRouter, HTTPException

from app.models.group import GroupInfoResponse, GroupValidateRequest, PresetListResponse
from app.services.group_service import group_service

router = APIRouter(prefix="/api/groups", tags=["Groups"])


@router.get(
    "/presets",
    response_model=PresetListResponse,
    summary="프리셋 군 목록",
)
async def list_presets():
    return group_service.list_presets()


@router.post(
    "/validate",
    response_model=GroupInfoResponse,
    summary="곱셈표 검증 (선택적으로 등록)",
    description="결합법칙 / 항등원 / 역원을 검사하고 켤레류 데이터를 돌려줍니다.",
)
async def validate_group(request: GroupValidateRequest):
    try:
        return group_service.validate(request)
    except ValueError as exc:
        raise HTTPException(status_code=400, detail=str(exc)) from exc


@router.get(
    "/{name}",
    response_model=GroupInfoResponse,
    summary="군 정보 조회 (켤레류 / 중심화군 / 잉여류 대표)",
)
async def get_group(name: str):
    try:
        return group_service.info(name)
    except ValueError as exc:
        raise HTTPException(status_code=404, detail=str(exc)) from exc
