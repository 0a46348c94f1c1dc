# app/utils/abelian.py
"""
아벨군의 닫힌 형태 A∞ 구조와 ℤ2 / ℤ4 / ℤ2×ℤ2 손계산 표

아벨군에서는 ŝ = 0 이고 m̂_p((g_1⊗α_1), ..., (g_p⊗α_p)) = g_1⋯g_p ⊗ m̂′_p(α_1, ..., α_p).
AbelianCochain 은 Ĉ*(G, k) 의 원소로, 키는 꼬리 튜플 (g_1, ..., g_k) 뿐이다.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from itertools import product
from typing import Dict, List, Optional, Sequence, Tuple

from app.core.exceptions import DegreeError, TateEngineError, UnsupportedGroupError
from app.utils.decomp import DecomposedElement
from app.utils.fgroup import FiniteGroup
from app.utils.scalars import FieldSpec, Raw
from app.utils.sparse import GradedVector, Key, TermAccumulator

logger = logging.getLogger(__name__)


class AbelianCochain(GradedVector):
    """Ĉ^m(G, k) 원소. m ≥ 0 이면 λ^{j_1..j_m} 기저, m < 0 이면 g_{j_1..j_s} 기저"""

    __slots__ = ()


def _sign(exponent: int) -> int:
    return -1 if exponent % 2 else 1


class AbelianClosedForms:
    """
    m̂′_1 / m̂′_2 / m̂′_3 닫힌 형태

    Args:
        group: 아벨군 (아니면 UnsupportedGroupError)
        spec: 계수체
    """

    def __init__(self, group: FiniteGroup, spec: FieldSpec) -> None:
        if not group.is_abelian:
            raise UnsupportedGroupError(f"{group.name} 은 아벨군이 아닙니다")
        self.group = group
        self.spec = spec

    def zero(self, degree: int) -> AbelianCochain:
        return AbelianCochain(self.spec, degree, {})

    def basis(self, degree: int):
        width = degree if degree >= 0 else -degree - 1
        return product(self.group.nonidentity, repeat=width)

    def basis_element(self, key: Sequence[int], degree: int) -> AbelianCochain:
        return AbelianCochain(self.spec, degree, {tuple(key): 1})

    # ==================== m̂′_1 ====================

    def mhat1_closed(self, e: AbelianCochain) -> AbelianCochain:
        G = self.group
        spec = self.spec
        m = e.degree
        acc = TermAccumulator(spec)
        if m >= 0:
            for key, c in e.terms.items():
                for k in G.nonidentity:
                    acc.add((k,) + key, c)
                    acc.add_signed(key + (k,), c, _sign(m + 1))
                for i, gi in enumerate(key):
                    for a in G.nonidentity:
                        if a != gi:
                            acc.add_signed(key[:i] + (a, G.mul(G.inv(a), gi)) + key[i + 1 :], c, _sign(i + 1))
        elif m == -1:
            for key, c in e.terms.items():
                acc.add(key, spec.mul(c, spec.coerce(G.order)))
        else:
            s = -m - 1
            outer = _sign(m + 1)
            for key, c in e.terms.items():
                acc.add_signed(key[1:], c, outer)
                for i in range(1, s):
                    merged = G.mul(key[i - 1], key[i])
                    if merged != G.identity:
                        acc.add_signed(key[: i - 1] + (merged,) + key[i + 1 :], c, outer * _sign(i))
                acc.add_signed(key[:-1], c, outer * _sign(s))
        return AbelianCochain(spec, m + 1, acc.finish())

    # ==================== m̂′_2 ====================

    def _m2_keys(self, p: Key, n: int, q: Key, m: int) -> List[Key]:
        G = self.group
        if n >= 0 and m >= 0:
            return [p + q]
        if n < 0 and m < 0:
            out = []
            for g in G.elements:
                mid = G.inv(G.mul(G.prod(p), g))
                if mid != G.identity:
                    out.append(q + (mid,) + p)
            return out
        if n >= 0:
            t = len(q)
            if n <= t:
                return [q[: t - n]] if q[t - n :] == p else []
            return [p[: n - t - 1]] if p[n - t :] == q else []
        s = len(p)
        if m <= s:
            return [p[m:]] if p[:m] == q else []
        return [q[s + 1 :]] if q[:s] == p else []

    def mhat2_closed(self, a: AbelianCochain, b: AbelianCochain) -> AbelianCochain:
        acc = TermAccumulator(self.spec)
        for ka, ca in a.terms.items():
            for kb, cb in b.terms.items():
                for key in self._m2_keys(ka, a.degree, kb, b.degree):
                    acc.add(key, self.spec.mul(ca, cb))
        return AbelianCochain(self.spec, a.degree + b.degree, acc.finish())

    # ==================== m̂′_3 ====================

    def _m3_keys(self, p: Key, m: int, alpha: Key, q: Key, n: int) -> List[Tuple[Key, int]]:
        """(φ̂ ∈ C^m, α̂ ∈ C_r, ψ̂ ∈ C^n), r+2 ≤ m+n"""
        G = self.group
        r = len(alpha)
        if r + 2 > m + n:
            return []
        out = []
        for j in range(max(1, r + 2 - m), min(n, r + 1) + 1):
            g = p[m - r + j - 2]
            if p[m - r + j - 1 :] != alpha[j - 1 :]:
                continue
            if q[: j - 1] != alpha[: j - 1] or q[j - 1] != G.inv(g):
                continue
            out.append((p[: m - r + j - 2] + q[j:], _sign(m + r + j - 1)))
        return out

    def _m3_chain_keys(self, alpha: Key, p: Key, m: int, beta: Key) -> List[Tuple[Key, int]]:
        """(α̂ ∈ C_r, φ̂ ∈ C^m, β̂ ∈ C_s), m - r ≤ s + 1"""
        G = self.group
        r, s = len(alpha), len(beta)
        if m - r > s + 1:
            return []
        out = []
        for j in range(max(0, s + 1 - m), min(s, r - m + s + 1) + 1):
            cut = m - s + j
            if p[: cut - 1] != alpha[: cut - 1] or p[cut:] != beta[j:]:
                continue
            g = p[cut - 1]
            out.append((beta[:j] + (G.inv(g),) + alpha[cut - 1 :], _sign(m + r + s - j)))
        return out

    def mhat3_closed(self, a: AbelianCochain, b: AbelianCochain, c: AbelianCochain) -> AbelianCochain:
        da, db, dc = a.degree, b.degree, c.degree
        degree = da + db + dc - 1
        spec = self.spec
        acc = TermAccumulator(spec)
        if da >= 0 and db < 0 and dc >= 0:
            kernel = lambda x, y, z: self._m3_keys(x, da, y, z, dc)  # noqa: E731
        elif da < 0 and db >= 0 and dc < 0:
            kernel = lambda x, y, z: self._m3_chain_keys(x, y, db, z)  # noqa: E731
        else:
            return AbelianCochain(spec, degree, {})
        for ka, ca in a.terms.items():
            for kb, cb in b.terms.items():
                for kc, cc in c.terms.items():
                    coeff = spec.mul(spec.mul(ca, cb), cc)
                    for key, sign in kernel(ka, kb, kc):
                        acc.add_signed(key, coeff, sign)
        return AbelianCochain(spec, degree, acc.finish())

    def mhat_closed(self, p: int, inputs: Sequence[AbelianCochain]) -> AbelianCochain:
        if len(inputs) != p:
            raise DegreeError(f"m̂′_{p} 에는 입력 {p} 개가 필요합니다")
        if p == 1:
            return self.mhat1_closed(inputs[0])
        if p == 2:
            return self.mhat2_closed(*inputs)
        if p == 3:
            return self.mhat3_closed(*inputs)
        return AbelianCochain(self.spec, sum(x.degree for x in inputs) + 2 - p, {})

    # ==================== 텐서 구조 ====================

    def tensor_structure(self, p: int, inputs: Sequence[Tuple[int, AbelianCochain]]) -> Tuple[int, AbelianCochain]:
        """m̂_p((g_i ⊗ α_i)) = (g_1⋯g_p, m̂′_p(α_1..α_p)). p > 3 이면 0"""
        if len(inputs) != p:
            raise DegreeError(f"텐서 구조 m̂_{p} 에는 입력 {p} 개가 필요합니다")
        label = self.group.prod([g for g, _ in inputs])
        return label, self.mhat_closed(p, [alpha for _, alpha in inputs])

    def to_decomposed(self, label: int, cochain: AbelianCochain) -> DecomposedElement:
        return DecomposedElement(self.spec, cochain.degree, {(label,) + k: c for k, c in cochain.terms.items()})

    def from_decomposed(self, e: DecomposedElement) -> Dict[int, AbelianCochain]:
        parts: Dict[int, Dict[Key, Raw]] = {}
        for key, c in e.terms.items():
            parts.setdefault(key[0], {})[key[1:]] = c
        return {x: AbelianCochain(self.spec, e.degree, terms) for x, terms in parts.items()}


# ==================== ℤ4 / ℤ2×ℤ2 표기 (j ∈ I_3 = {1,2,3}) ====================

_INDEXED_GROUPS = ("Z4", "Z2xZ2")


def _check_indices(js: Sequence[int], i: int, span: int) -> None:
    if any(j not in (1, 2, 3) for j in js):
        raise TateEngineError(f"인덱스는 I_3 = {{1,2,3}} 안에 있어야 합니다: {tuple(js)}")
    if not 1 <= i <= len(js) - span + 1:
        raise TateEngineError(f"위치 i={i} 가 범위를 벗어났습니다 (길이 {len(js)})")


def ci_map(group_name: str, i: int, js: Sequence[int], *, corrected: bool = False) -> List[Tuple[int, ...]]:
    """
    손계산 표의 c_i (1-based i). 형식적 합을 튜플 목록으로 돌려준다.

    ℤ4 의 j_i = 2 칸은 인쇄된 대로 (3,3) 하나만 넣는다. corrected=True 면 실제 미분처럼 (1,1) 도 넣는다.
    """
    if group_name not in _INDEXED_GROUPS:
        raise TateEngineError(f"c_i 는 {_INDEXED_GROUPS} 에서만 정의됩니다: {group_name}")
    _check_indices(js, i, 1)
    js = tuple(js)
    head, tail = js[: i - 1], js[i:]
    ji = js[i - 1]
    if group_name == "Z4":
        middle = [(1, 1), (3, 3)] if corrected else [(3, 3)]
        pairs = {1: [(2, 3), (3, 2)], 2: middle, 3: [(1, 2), (2, 1)]}[ji]
    else:
        others = [v for v in (1, 2, 3) if v != ji]
        pairs = [(others[0], others[1]), (others[1], others[0])]
    return [head + pair + tail for pair in pairs]


def di_map(i: int, js: Sequence[int]) -> Optional[Tuple[int, ...]]:
    """ℤ2×ℤ2 의 d_i: j_i ≠ j_{i+1} 이면 6 - j_i - j_{i+1} 로 합치고, 같으면 0(None)"""
    _check_indices(js, i, 2)
    js = tuple(js)
    a, b = js[i - 1], js[i]
    if a == b:
        return None
    return js[: i - 1] + (6 - a - b,) + js[i + 1 :]


def printed_indexed_mhat1(
    group_name: str, js: Sequence[int], degree: int, *, corrected: bool = False
) -> Dict[Tuple[int, ...], int]:
    """c_i / d_i 로 적힌 ℤ4 · ℤ2×ℤ2 의 m̂′_1 (정수 계수). corrected 는 ci_map 에 그대로 넘긴다"""
    if group_name not in _INDEXED_GROUPS:
        raise TateEngineError(f"표가 없는 군입니다: {group_name}")
    acc: Dict[Tuple[int, ...], int] = {}

    def add(key: Tuple[int, ...], c: int) -> None:
        acc[key] = acc.get(key, 0) + c

    js = tuple(js)
    if degree >= 0:
        n = degree
        for j in (1, 2, 3):
            add((j,) + js, 1)
            add(js + (j,), _sign(n + 1))
        for i in range(1, n + 1):
            for key in ci_map(group_name, i, js, corrected=corrected):
                add(key, _sign(i))
    elif degree == -1:
        add((), 4)
    else:
        s = -degree - 1
        outer = _sign(degree + 1)
        if s >= 2:
            add(js[1:], outer)
            for i in range(1, s):
                if group_name == "Z4":
                    merged = (js[i - 1] + js[i]) % 4
                    key = None if merged == 0 else js[: i - 1] + (merged,) + js[i + 1 :]
                else:
                    key = di_map(i, js)
                if key is not None:
                    add(key, outer * _sign(i))
            add(js[:-1], outer * _sign(s))
    return {k: v for k, v in acc.items() if v != 0}


def printed_indexed_mhat2(group_name: str, js: Sequence[int], n: int, ks: Sequence[int], m: int) -> Dict[Tuple[int, ...], int]:
    """
    ℤ4 · ℤ2×ℤ2 의 m̂′_2 여섯 경우 (첫 입력 차수 n, 둘째 입력 차수 m)

    경우 2 의 Σ_{a=1}^3 은 I_3 의 세 원소를 모두 도는 합이라 ℤ2 와 달리 그대로 맞다.
    """
    if group_name not in _INDEXED_GROUPS:
        raise TateEngineError(f"표가 없는 군입니다: {group_name}")
    js, ks = tuple(js), tuple(ks)
    if n >= 0 and m >= 0:
        return {js + ks: 1}
    if n < 0 and m < 0:
        return {ks + (a,) + js: 1 for a in (1, 2, 3)}
    if n >= 0:
        t = len(ks)
        if n - t - 1 <= -1:
            return {ks[: t - n]: 1} if ks[t - n :] == js else {}
        return {js[: n - t - 1]: 1} if js[n - t :] == ks else {}
    s = len(js)
    if m - s - 1 <= -1:
        return {js[m:]: 1} if js[:m] == ks else {}
    return {ks[s + 1 :]: 1} if ks[:s] == js else {}


def printed_indexed_mhat3_special(group_name: str, kind: str, lam_key: Sequence[int], chain: Sequence[int], other: Sequence[int]) -> Dict[Tuple[int, ...], int]:
    """
    표에 따로 적힌 m̂′_3 특수형

    kind="r+2=m+n": (λ^{j}, g_{l}, μ^{k}) → -λμ (조건 j_1 k_n 역원, l = k_{1..n-1} + j_{2..m})
    kind="m=1":     (g_{j}, λ^{k_1}, g_{l}) → (-1)^{r+1} λ g_{l, k_1⁻¹, j}
    """
    inv = (lambda v: (4 - v) % 4) if group_name == "Z4" else (lambda v: v)
    if kind == "r+2=m+n":
        js, ls, ks = tuple(lam_key), tuple(chain), tuple(other)
        m, n, r = len(js), len(ks), len(ls)
        if r + 2 != m + n:
            raise DegreeError("r+2 = m+n 특수형이 아닙니다")
        if js[0] == inv(ks[-1]) and ls == ks[: n - 1] + js[1:]:
            return {(): -1}
        return {}
    if kind == "m=1":
        js, ks, ls = tuple(chain), tuple(lam_key), tuple(other)
        if len(ks) != 1:
            raise DegreeError("m = 1 특수형이 아닙니다")
        return {ls + (inv(ks[0]),) + js: _sign(len(js) + 1)}
    raise TateEngineError(f"알 수 없는 특수형: {kind}")


# ==================== ℤ2 표 (λ, μ, v 스칼라 표기) ====================


def printed_z2_mhat1(degree: int) -> int:
    """m̂′_1(1^{deg}) 의 계수 (ℤ2 의 각 차수 기저는 하나뿐)"""
    if degree >= 0:
        return 1 + _sign(degree + 1)
    if degree == -1:
        return 2
    s = -degree - 1
    if s == 1:
        return 0
    return _sign(degree + 1) * (1 + _sign(s))


def printed_z2_mhat2(n: int, m: int) -> Tuple[int, int]:
    """(출력 차수, λμ 의 배수). 경우 2 는 인쇄된 Σ_{a=1}^3 을 그대로 3 으로 둔다"""
    if n >= 0 and m >= 0:
        return n + m, 1
    if n < 0 and m < 0:
        return n + m, 3
    return n + m, 1


def printed_z2_mhat3(degrees: Tuple[int, int, int], lam: Raw, mu: Raw, v: Raw, spec: FieldSpec) -> Tuple[int, Raw]:
    """
    (출력 차수, 계수). (λ^m, v_r, μ^n) 과 (λ_r, μ^m, v_s) 두 경우만 0 이 아니다.
    두 번째 경우는 인쇄된 대로 λ 를 한 번 더 곱한다.
    """
    da, db, dc = degrees
    out = da + db + dc - 1
    total = 0
    if da >= 0 and db < 0 and dc >= 0:
        m, r, n = da, -db - 1, dc
        if r + 2 <= m + n:
            total = sum(_sign(m + r + i - 1) for i in range(max(1, r + 2 - m), min(n, r + 1) + 1))
        return out, spec.mul(spec.coerce(total), spec.mul(spec.mul(lam, mu), v))
    if da < 0 and db >= 0 and dc < 0:
        r, m, s = -da - 1, db, -dc - 1
        if m - 1 <= r + s:
            total = sum(_sign(m + r + s - i) for i in range(max(0, s + 1 - m), min(s, r - m + s + 1) + 1))
        return out, spec.mul(spec.coerce(total), spec.mul(lam, spec.mul(spec.mul(lam, mu), v)))
    return out, 0


@dataclass(frozen=True)
class KnownDiscrepancy:
    key: str
    table: str
    printed: str
    corrected: str


KNOWN_DISCREPANCIES: Tuple[KnownDiscrepancy, ...] = (
    KnownDiscrepancy(
        key="z2-m2-case2",
        table="Z2 m̂′_2 case 2",
        printed="Σ_{a=1}^3 (λμ)_{s+t+1} = 3λμ",
        corrected="(λμ)_{s+t+1}: the middle slot ranges over G and only one value is non-identity",
    ),
    KnownDiscrepancy(
        key="z2-m3-case2",
        table="Z2 m̂′_3 case (2)",
        printed="Σ ± λ(λμv)_{r-m+s+2}",
        corrected="Σ ± (λμv)_{r-m+s+2} (no extra λ)",
    ),
    KnownDiscrepancy(
        key="z4-ci-j2",
        table="Z4 c_i at j_i = 2",
        printed="(…,3,3,…)",
        corrected="(…,1,1,…) + (…,3,3,…)",
    ),
)
