# app/main.py

import logging

from app.core.config import settings

# 로깅 설정
logging.basicConfig(
    level=getattr(logging, settings.log_level.upper(), logging.INFO),
    format='%(asctime)s - %(name)s - %(levelname)s - %(message)s'
)

from datetime import datetime

from fastapi import FastAPI
from fastapi.middleware.cors import CORSMiddleware

from app.api import abelian, compute, groups, trees, verify
from app.utils.fgroup import PRESET_NAMES

app = FastAPI(
    title=settings.project_name,
    version="1.0.0",
    description="유한군 군환 kG 의 Tate-Hochschild 복합체, 가법 분해, 전이된 A∞ 구조 계산 / 검증",
    docs_url="/docs",
    redoc_url="/redoc"
)

# ==================== CORS 미들웨어 ====================
app.add_middleware(
    CORSMiddleware,
    allow_origins=["*"],
    allow_credentials=True,
    allow_methods=["*"],
    allow_headers=["*"],
)

# ==================== API 라우터 등록 ====================
app.include_router(groups.router)
app.include_router(trees.router)
app.include_router(compute.router)
app.include_router(abelian.router)
app.include_router(verify.router)

# ==================== 기본 엔드포인트 ====================

@app.get("/")
async def root():
    """API 상태 확인"""
    return {
        "status": "healthy",
        "message": settings.project_name,
        "version": "1.0.0",
        "defaults": {
            "group": settings.default_group,
            "field": settings.default_field,
            "sign_policy": settings.sign_policy,
        },
        "docs": "/docs",
        "endpoints": {
            "groups": "/api/groups",
            "trees": "/api/trees/{n}",
            "compute": "/api/compute/{op}",
            "abelian": "/api/abelian/{op}",
            "verify": "/api/verify/{check}",
        }
    }


@app.get("/health")
async def health_check():
    """헬스 체크"""
    return {
        "status": "healthy",
        "services": {
            "api": "running",
            "presets": len(PRESET_NAMES),
        },
        "timestamp": datetime.now().isoformat()
    }
