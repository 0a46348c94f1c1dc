# app/core/exceptions.py
"""
엔진 공통 예외 계층

모든 도메인 예외는 ValueError 를 상속하므로 라우터에서는
기존 방식대로 `except ValueError` 하나로 HTTPException 으로 변환할 수 있다.
"""

from __future__ import annotations

from typing import Any, Optional, Tuple


class TateEngineError(ValueError):
    """엔진 도메인 예외의 기본 클래스"""


class SpecMismatchError(TateEngineError):
    """서로 다른 계수체(FieldSpec)를 섞어서 연산한 경우"""


class GroupValidationError(TateEngineError):
    """곱셈표 검증 실패 (결합법칙 / 항등원 / 역원)"""

    def __init__(self, message: str, witness: Optional[Tuple[Any, ...]] = None) -> None:
        super().__init__(message)
        self.witness = witness


class UnknownPresetError(TateEngineError):
    """등록되지 않은 프리셋 군 이름"""


class DegreeError(TateEngineError):
    """차수 불일치, 입력 개수 불일치, local op 종류와 입력 차수 불일치"""


class UnsupportedGroupError(TateEngineError):
    """아벨군 전용 연산을 비아벨군에 요청한 경우"""


class MembershipError(TateEngineError):
    """코체인 값이 기대한 켤레류 성분 밖에 놓인 경우"""
