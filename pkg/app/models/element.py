# app/models/element.py
"""
원소 JSON 형식 (Pydantic)

- 스칼라: Q 는 "num/den" 문자열 (정수는 그대로 허용), F_p 는 정수
- TateElement: 코체인은 key = [g_1..g_m] 와 kG 값 value, 체인은 key = [g_0..g_s] 와 coeff
- DecomposedElement: {"class": x, "key": [h_1..h_k], "coeff": c}
"""

from __future__ import annotations

from collections import defaultdict
from typing import Dict, List, Optional, Union

from pydantic import BaseModel, ConfigDict, Field

from app.core.exceptions import DegreeError
from app.utils.abelian import AbelianClosedForms, AbelianCochain
from app.utils.decomp import CentralizerComplex, DecomposedElement
from app.utils.hochschild import TateComplex, TateElement
from app.utils.scalars import FieldSpec

Scalar = Union[int, str]


# ==================== 𝒟* 원소 ====================

class AlgebraTerm(BaseModel):
    """kG 값의 한 항"""
    element: int = Field(..., ge=0)
    coeff: Scalar


class TateTerm(BaseModel):
    key: List[int]
    coeff: Optional[Scalar] = Field(None, description="체인 항의 계수")
    value: Optional[List[AlgebraTerm]] = Field(None, description="코체인 항의 kG 값")


class TateElementModel(BaseModel):
    field: str = "Q"
    degree: int
    terms: List[TateTerm] = Field(default_factory=list)

    @classmethod
    def from_element(cls, e: TateElement) -> "TateElementModel":
        spec = e.spec
        if e.degree >= 0:
            grouped: Dict[tuple, List[AlgebraTerm]] = defaultdict(list)
            for key, c in e:
                grouped[key[1:]].append(AlgebraTerm(element=key[0], coeff=spec.encode(c)))
            terms = [TateTerm(key=list(tail), value=value) for tail, value in sorted(grouped.items())]
        else:
            terms = [TateTerm(key=list(key), coeff=spec.encode(c)) for key, c in e]
        return cls(field=spec.label, degree=e.degree, terms=terms)

    def to_element(self, complex_: TateComplex) -> TateElement:
        spec = FieldSpec.parse(self.field)
        complex_.spec.require_same(spec)
        raw: Dict[tuple, Scalar] = {}
        for term in self.terms:
            if self.degree >= 0:
                if term.value is None:
                    raise DegreeError(f"차수 {self.degree} 코체인 항에는 value 가 필요합니다: {term.key}")
                for part in term.value:
                    key = (part.element,) + tuple(term.key)
                    raw[key] = spec.add(raw.get(key, 0), spec.coerce(part.coeff))
            else:
                if term.coeff is None:
                    raise DegreeError(f"체인 항에는 coeff 가 필요합니다: {term.key}")
                key = tuple(term.key)
                raw[key] = spec.add(raw.get(key, 0), spec.coerce(term.coeff))
        return complex_.element(self.degree, raw)


# ==================== 분해측 원소 ====================

class DecomposedTerm(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    class_rep: int = Field(..., alias="class", ge=0)
    key: List[int] = Field(default_factory=list)
    coeff: Scalar


class DecomposedElementModel(BaseModel):
    field: str = "Q"
    degree: int
    terms: List[DecomposedTerm] = Field(default_factory=list)

    @classmethod
    def from_element(cls, e: DecomposedElement) -> "DecomposedElementModel":
        terms = [DecomposedTerm(class_rep=key[0], key=list(key[1:]), coeff=e.spec.encode(c)) for key, c in e]
        return cls(field=e.spec.label, degree=e.degree, terms=terms)

    def to_element(self, target: CentralizerComplex) -> DecomposedElement:
        spec = FieldSpec.parse(self.field)
        target.spec.require_same(spec)
        raw: Dict[tuple, Scalar] = {}
        for term in self.terms:
            key = (term.class_rep,) + tuple(term.key)
            raw[key] = spec.add(raw.get(key, 0), spec.coerce(term.coeff))
        return target.element(self.degree, raw)


# ==================== 아벨군 닫힌 형태 ====================

class AbelianTerm(BaseModel):
    key: List[int] = Field(default_factory=list)
    coeff: Scalar


class AbelianCochainModel(BaseModel):
    field: str = "Q"
    degree: int
    label: Optional[int] = Field(None, description="텐서 구조에서 곱해질 군 원소 g")
    terms: List[AbelianTerm] = Field(default_factory=list)

    @classmethod
    def from_element(cls, e: AbelianCochain, label: Optional[int] = None) -> "AbelianCochainModel":
        terms = [AbelianTerm(key=list(key), coeff=e.spec.encode(c)) for key, c in e]
        return cls(field=e.spec.label, degree=e.degree, label=label, terms=terms)

    def to_element(self, forms: AbelianClosedForms) -> AbelianCochain:
        spec = FieldSpec.parse(self.field)
        forms.spec.require_same(spec)
        width = self.degree if self.degree >= 0 else -self.degree - 1
        G = forms.group
        raw: Dict[tuple, Scalar] = {}
        for term in self.terms:
            key = tuple(term.key)
            if len(key) != width:
                raise DegreeError(f"차수 {self.degree} 의 키 길이는 {width} 이어야 합니다: {key}")
            if any(not 0 <= v < G.order for v in key):
                raise DegreeError(f"군 원소 범위를 벗어난 키: {key}")
            if G.identity in key:
                continue
            raw[key] = spec.add(raw.get(key, 0), spec.coerce(term.coeff))
        return AbelianCochain(spec, self.degree, raw)
