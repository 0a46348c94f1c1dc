import logging

from fastapi import APIRouter, HTTPException

from app.models.verify import CheckName, CheckReportModel, VerifyRequest, VerifySummary
from app.services.verify_service import verify_service

logger = logging.getLogger(__name__)

router = APIRouter(prefix="/api/verify", tags=["Verify"])


@router.post(
    "/all",
    response_model=VerifySummary,
    summary="모든 검사 실행",
)
async def verify_all(request: VerifyRequest):
    try:
        return verify_service.run_all(request)
    except ValueError as exc:
        raise HTTPException(status_code=400, detail=str(exc)) from exc


@router.post(
    "/{check}",
    response_model=CheckReportModel,
    summary="단일 검사 실행",
    description="실패는 HTTP 오류가 아니라 보고서의 passed / failures 로 전달됩니다. policy=printed 는 notes 에 경고가 붙습니다.",
)
async def verify_one(check: CheckName, request: VerifyRequest):
    try:
        report = verify_service.run(check, request)
    except ValueError as exc:
        raise HTTPException(status_code=400, detail=str(exc)) from exc
    except Exception as exc:
        logger.exception("검사 중 예기치 못한 오류: %s", check.value)
        raise HTTPException(status_code=500, detail=str(exc)) from exc
    return CheckReportModel(**report.to_dict())
