# app/utils/sparse.py
"""
정수 튜플 키 → 정확한 계수의 희소 벡터

TateElement / DecomposedElement 가 공통으로 쓰는 저장 형식이다.
0 계수는 항상 제거된 상태로 유지한다.
"""

from __future__ import annotations

from typing import Any, Dict, Hashable, Iterator, Optional, Tuple

from app.core.exceptions import DegreeError
from app.utils.scalars import FieldSpec, Raw

Key = Tuple[int, ...]


class TermAccumulator:
    """키별 계수를 누적한 뒤 0 을 걸러 dict 로 돌려주는 작업용 버퍼"""

    __slots__ = ("spec", "_terms")

    def __init__(self, spec: FieldSpec) -> None:
        self.spec = spec
        self._terms: Dict[Hashable, Raw] = {}

    def add(self, key: Hashable, coeff: Raw) -> None:
        if coeff == 0:
            return
        current = self._terms.get(key)
        if current is None:
            self._terms[key] = coeff
        else:
            self._terms[key] = self.spec.add(current, coeff)

    def add_signed(self, key: Hashable, coeff: Raw, sign: int) -> None:
        self.add(key, coeff if sign > 0 else self.spec.neg(coeff))

    def update(self, terms: Dict[Hashable, Raw], scale: Optional[Raw] = None) -> None:
        for key, coeff in terms.items():
            self.add(key, coeff if scale is None else self.spec.mul(coeff, scale))

    def finish(self) -> Dict[Hashable, Raw]:
        return {k: v for k, v in self._terms.items() if v != 0}


class GradedVector:
    """차수가 고정된 동차 희소 벡터 (불변 취급)"""

    __slots__ = ("spec", "degree", "terms")

    def __init__(self, spec: FieldSpec, degree: int, terms: Optional[Dict[Any, Raw]] = None) -> None:
        self.spec = spec
        self.degree = degree
        self.terms: Dict[Any, Raw] = {k: v for k, v in (terms or {}).items() if v != 0}

    # ----- 생성 헬퍼 ----- #
    def _like(self, terms: Dict[Any, Raw]) -> "GradedVector":
        return type(self)(self.spec, self.degree, terms)

    def _check_compatible(self, other: "GradedVector") -> None:
        self.spec.require_same(other.spec)
        if other.degree != self.degree:
            raise DegreeError(f"차수 불일치: {self.degree} != {other.degree}")
        if type(other) is not type(self):
            raise DegreeError(f"원소 종류 불일치: {type(self).__name__} / {type(other).__name__}")

    # ----- 선형 연산 ----- #
    def add_scaled(self, coeff: Any, other: "GradedVector") -> "GradedVector":
        """self + coeff·other"""
        self._check_compatible(other)
        c = self.spec.coerce(coeff)
        acc = TermAccumulator(self.spec)
        acc.update(self.terms)
        if c != 0:
            acc.update(other.terms, c)
        return self._like(acc.finish())

    def scale(self, coeff: Any) -> "GradedVector":
        c = self.spec.coerce(coeff)
        if c == 0:
            return self._like({})
        return self._like({k: self.spec.mul(v, c) for k, v in self.terms.items()})

    def __add__(self, other: "GradedVector") -> "GradedVector":
        return self.add_scaled(1, other)

    def __sub__(self, other: "GradedVector") -> "GradedVector":
        return self.add_scaled(-1, other)

    def __neg__(self) -> "GradedVector":
        return self.scale(-1)

    # ----- 조회 ----- #
    def coefficient(self, key: Any) -> Raw:
        return self.terms.get(key, 0)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self) -> Iterator[Tuple[Any, Raw]]:
        return iter(sorted(self.terms.items()))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GradedVector) or type(other) is not type(self):
            return NotImplemented
        return self.spec == other.spec and self.degree == other.degree and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((type(self).__name__, self.spec, self.degree, frozenset(self.terms.items())))

    def __repr__(self) -> str:
        shown = ", ".join(f"{k}:{self.spec.encode(v)}" for k, v in list(self)[:6])
        more = " ..." if len(self.terms) > 6 else ""
        return f"{type(self).__name__}(deg={self.degree}, {self.spec.label}, {{{shown}{more}}})"
