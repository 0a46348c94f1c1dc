# conftest.py
"""공용 pytest 픽스처: 작은 프리셋 군, 계수체, 엔진 문맥, API 클라이언트"""

import pytest

from app.core.config import settings
from app.services.compute_service import compute_service
from app.utils.fgroup import conjugacy, preset
from app.utils.scalars import QQ, FieldSpec


@pytest.fixture
def qq():
    return QQ


@pytest.fixture
def f2():
    return FieldSpec(2)


@pytest.fixture
def f3():
    return FieldSpec(3)


@pytest.fixture
def z2():
    return preset("Z2")


@pytest.fixture
def z3():
    return preset("Z3")


@pytest.fixture
def z4():
    return preset("Z4")


@pytest.fixture
def s3():
    return preset("S3")


@pytest.fixture
def s3_data(s3):
    return conjugacy(s3)


@pytest.fixture
def s3_ctx(s3, qq):
    return compute_service.context(s3, qq, "koszul")


@pytest.fixture
def z3_ctx(z3, qq):
    return compute_service.context(z3, qq, "koszul")


@pytest.fixture
def small_exhaustive_limit(monkeypatch):
    """전수 검사 상한을 낮춰 큰 조합은 표본 검사로 돌린다"""
    monkeypatch.setattr(settings, "max_exhaustive_cases", 300)
    return 300


@pytest.fixture
def client():
    from fastapi.testclient import TestClient

    from app.main import app

    return TestClient(app)
