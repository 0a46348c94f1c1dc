# app/utils/hochschild.py
"""
Tate-Hochschild 복합체 𝒟*(kG, kG)

키 규약 (모두 정수 튜플):
- 코체인 (m ≥ 0): (v, g_1, ..., g_m)  → φ(g_1..g_m) 에 kG 기저 v 가 계수만큼 들어간 항
- 체인 (m ≤ -1, s = -m-1): (g_0, g_1, ..., g_s)
막대 슬롯(g_1.. 자리)에는 항등원이 들어가지 않는다. v / g_0 자리는 제한 없음.
"""

from __future__ import annotations

import logging
from itertools import product
from typing import Any, Dict, Iterator, Mapping, Optional, Sequence, Tuple

from app.core.exceptions import DegreeError
from app.utils.fgroup import FiniteGroup
from app.utils.scalars import FieldSpec, Raw
from app.utils.sparse import GradedVector, Key, TermAccumulator

logger = logging.getLogger(__name__)


class TateElement(GradedVector):
    """𝒟^m 의 동차 원소. m ≥ 0 이면 코체인, m ≤ -1 이면 체인"""

    __slots__ = ()

    @property
    def is_cochain(self) -> bool:
        return self.degree >= 0

    @property
    def slots(self) -> int:
        """막대 슬롯 개수 (코체인 m, 체인 s = -m-1)"""
        return self.degree if self.degree >= 0 else -self.degree - 1

    def value_at(self, gs: Sequence[int]) -> "GroupAlgebraElement":
        """코체인 φ(g_1..g_m) 를 kG 원소로 읽기"""
        if not self.is_cochain:
            raise DegreeError("value_at 은 코체인에서만 쓸 수 있습니다")
        target = tuple(gs)
        return GroupAlgebraElement(self.spec, {k[0]: c for k, c in self.terms.items() if k[1:] == target})


class GroupAlgebraElement:
    """kG 원소 Σ c_g·g"""

    __slots__ = ("spec", "coeffs")

    def __init__(self, spec: FieldSpec, coeffs: Optional[Mapping[int, Any]] = None) -> None:
        self.spec = spec
        self.coeffs: Dict[int, Raw] = {}
        for g, c in (coeffs or {}).items():
            raw = spec.coerce(c)
            if raw != 0:
                self.coeffs[int(g)] = raw

    def mul(self, other: "GroupAlgebraElement", group: FiniteGroup) -> "GroupAlgebraElement":
        self.spec.require_same(other.spec)
        acc = TermAccumulator(self.spec)
        for a, ca in self.coeffs.items():
            for b, cb in other.coeffs.items():
                acc.add(group.mul(a, b), self.spec.mul(ca, cb))
        return GroupAlgebraElement(self.spec, acc.finish())

    def is_central(self, group: FiniteGroup) -> bool:
        for g in group.elements:
            basis = GroupAlgebraElement(self.spec, {g: 1})
            if basis.mul(self, group).coeffs != self.mul(basis, group).coeffs:
                return False
        return True

    def as_tate(self) -> TateElement:
        return TateElement(self.spec, 0, {(g,): c for g, c in self.coeffs.items()})

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GroupAlgebraElement):
            return NotImplemented
        return self.spec == other.spec and self.coeffs == other.coeffs

    def __repr__(self) -> str:
        body = " + ".join(f"{self.spec.encode(c)}·g{g}" for g, c in sorted(self.coeffs.items()))
        return f"GroupAlgebraElement({body or '0'})"


class TateComplex:
    """
    고정된 (G, k) 위의 𝒟* 와 미분들

    Args:
        group: 유한군
        spec: 계수체
    """

    def __init__(self, group: FiniteGroup, spec: FieldSpec) -> None:
        self.group = group
        self.spec = spec
        self._bar = group.nonidentity

    # ==================== 기저 / 생성 ====================

    def zero(self, degree: int) -> TateElement:
        return TateElement(self.spec, degree, {})

    def element(self, degree: int, terms: Mapping[Key, Any]) -> TateElement:
        """키 검증 후 원소 생성"""
        raw: Dict[Key, Raw] = {}
        width = (degree + 1) if degree >= 0 else (-degree)
        for key, coeff in terms.items():
            key = tuple(int(v) for v in key)
            if len(key) != width:
                raise DegreeError(f"차수 {degree} 의 키 길이는 {width} 이어야 합니다: {key}")
            if any(not 0 <= v < self.group.order for v in key):
                raise DegreeError(f"군 원소 범위를 벗어난 키: {key}")
            if any(v == self.group.identity for v in key[1:]):
                continue
            c = self.spec.coerce(coeff)
            raw[key] = self.spec.add(raw.get(key, 0), c)
        return TateElement(self.spec, degree, raw)

    def basis(self, degree: int) -> Iterator[Key]:
        """정규화 기저 키 전체: G × Ḡ^slots"""
        slots = degree if degree >= 0 else -degree - 1
        for head in self.group.elements:
            for tail in product(self._bar, repeat=slots):
                yield (head,) + tail

    def basis_size(self, degree: int) -> int:
        slots = degree if degree >= 0 else -degree - 1
        return self.group.order * len(self._bar) ** slots

    def basis_element(self, key: Sequence[int], degree: int) -> TateElement:
        return TateElement(self.spec, degree, {tuple(key): 1})

    # ==================== 미분 ====================

    def cochain_diff(self, f: TateElement) -> TateElement:
        """δ^m: 𝒟^m → 𝒟^{m+1} (m ≥ 0). 막대 슬롯 곱이 1 이 되는 항은 나타나지 않는다"""
        m = f.degree
        if m < 0:
            raise DegreeError(f"cochain_diff 는 m ≥ 0 에서만 정의됩니다: m={m}")
        G = self.group
        spec = self.spec
        bar = self._bar
        last_sign = 1 if (m + 1) % 2 == 0 else -1
        acc = TermAccumulator(spec)
        for key, c in f.terms.items():
            v, gs = key[0], key[1:]
            neg_c = spec.neg(c)
            for k in bar:
                acc.add((G.mul(k, v), k) + gs, c)
                acc.add((G.mul(v, k),) + gs + (k,), c if last_sign > 0 else neg_c)
            for i, gi in enumerate(gs):
                coeff = c if i % 2 == 1 else neg_c
                head, tail = gs[:i], gs[i + 1 :]
                for a in bar:
                    if a == gi:
                        continue
                    acc.add((v,) + head + (a, G.mul(G.inv(a), gi)) + tail, coeff)
        return TateElement(spec, m + 1, acc.finish())

    def _last_face_sign(self, s: int) -> int:
        return 1 if s % 2 == 0 else -1

    def chain_diff(self, a: TateElement) -> TateElement:
        """∂_s: C_s → C_{s-1} (차수 m = -s-1 ≤ -2 에서 m+1 로)"""
        m = a.degree
        if m > -2:
            raise DegreeError(f"chain_diff 는 m ≤ -2 에서만 정의됩니다: m={m}")
        s = -m - 1
        G = self.group
        spec = self.spec
        e = G.identity
        last = self._last_face_sign(s)
        acc = TermAccumulator(spec)
        for key, c in a.terms.items():
            g0, gs = key[0], key[1:]
            acc.add((G.mul(g0, gs[0]),) + gs[1:], c)
            for i in range(1, s):
                merged = G.mul(gs[i - 1], gs[i])
                if merged == e:
                    continue
                acc.add_signed((g0,) + gs[: i - 1] + (merged,) + gs[i + 1 :], c, 1 if i % 2 == 0 else -1)
            acc.add_signed((G.mul(gs[-1], g0),) + gs[:-1], c, last)
        return TateElement(spec, m + 1, acc.finish())

    def trace_tau(self, a: TateElement) -> TateElement:
        """τ(x) = Σ_g g x g⁻¹ (차수 -1 → 0)"""
        if a.degree != -1:
            raise DegreeError(f"trace_tau 는 차수 -1 에서만 정의됩니다: m={a.degree}")
        G = self.group
        acc = TermAccumulator(self.spec)
        for (x,), c in a.terms.items():
            for g in G.elements:
                acc.add((G.conjugate(G.inv(g), x),), c)
        return TateElement(self.spec, 0, acc.finish())

    def dprime(self, a: TateElement) -> TateElement:
        """부호 보정된 전체 미분 ∂′"""
        self.spec.require_same(a.spec)
        m = a.degree
        if m >= 0:
            return self.cochain_diff(a)
        if m == -1:
            return self.trace_tau(a)
        out = self.chain_diff(a)
        return out if (m + 1) % 2 == 0 else out.scale(-1)

