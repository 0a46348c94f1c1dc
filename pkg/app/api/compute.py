from fastapi import APIRouter, HTTPException

from app.models.compute import ComputeOp, ComputeRequest, ComputeResponse
from app.services.compute_service import compute_service

router = APIRouter(prefix="/api/compute", tags=["Compute"])


@router.post(
    "/{op}",
    response_model=ComputeResponse,
    summary="단일 연산 (diff / cup / m3 / mhat / decompose / iota / rho / s)",
)
async def compute(op: ComputeOp, request: ComputeRequest):
    try:
        return compute_service.compute(op, request)
    except ValueError as exc:
        raise HTTPException(status_code=400, detail=str(exc)) from exc
