# app/core/config.py
"""
환경 변수 / .env 기반 설정

TATE_ 접두사를 붙인 환경 변수로 모든 값을 덮어쓸 수 있다.
예) TATE_DEFAULT_FIELD=Fp:3, TATE_SIGN_POLICY=printed
"""

from __future__ import annotations

from functools import lru_cache
from typing import Literal

from dotenv import load_dotenv
from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict

load_dotenv()


class Settings(BaseSettings):
    """엔진 / API / CLI 공통 설정"""

    model_config = SettingsConfigDict(env_prefix="TATE_", env_file=".env", extra="ignore")

    project_name: str = "Tate-Hochschild A-infinity Engine"
    default_field: str = Field("Q", description="기본 계수체 (Q, Fp:p, F2 ...)")
    default_group: str = Field("S3", description="기본 프리셋 군")
    sign_policy: Literal["koszul", "printed"] = "koszul"

    sample_seed: int = 20240607
    stasheff_samples: int = Field(200, ge=1)
    transferred_samples: int = Field(100, ge=1)
    max_exhaustive_cases: int = Field(20000, ge=1, description="이 개수를 넘으면 표본 검사로 전환")
    max_group_order: int = Field(32, ge=1)

    log_level: str = "INFO"


@lru_cache
def get_settings() -> Settings:
    return Settings()


settings = get_settings()
