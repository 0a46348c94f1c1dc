# app/utils/products.py
"""
𝒟* 위의 곱: 여섯 경우로 나뉘는 cup 곱과 삼항 연산 m3

모든 공식은 기저 키 단위로 계산한 뒤 쌍선형으로 확장한다.
m3 의 출력 차수는 deg a + deg b + deg c - 1 이다.
"""

from __future__ import annotations

import logging
from typing import Callable, List, Literal, Sequence, Tuple

from app.core.exceptions import DegreeError
from app.utils.hochschild import TateComplex, TateElement
from app.utils.sparse import Key, TermAccumulator

logger = logging.getLogger(__name__)

M3Sign = Literal["corrected", "uncorrected"]


class TateProducts:
    """
    cup / m3 / 통합 mult(k, ...) 제공

    Args:
        complex_: 대상 복합체
        m3_sign: "uncorrected" 는 경우 (v) 의 부호를 (-1)^{m-j} 로 되돌린 회귀 대조용
    """

    def __init__(self, complex_: TateComplex, m3_sign: M3Sign = "corrected") -> None:
        self.complex = complex_
        self.group = complex_.group
        self.spec = complex_.spec
        self.m3_sign = m3_sign

    # ==================== cup ====================

    def _cup_keys(self, ka: Key, n: int, kb: Key, m: int) -> List[Key]:
        G = self.group
        mul, inv = G.mul, G.inv
        if n >= 0 and m >= 0:
            return [(mul(ka[0], kb[0]),) + ka[1:] + kb[1:]]

        if n < 0 and m < 0:
            g0, h0 = ka[0], kb[0]
            out = []
            for g in G.elements:
                mid = mul(inv(g), g0)
                if mid == G.identity:
                    continue
                out.append((mul(g, h0),) + kb[1:] + (mid,) + ka[1:])
            return out

        if n >= 0:
            t = -m - 1
            v, h0 = ka[0], kb[0]
            if n <= t:
                if kb[t - n + 1 :] != ka[1:]:
                    return []
                return [(mul(v, h0),) + kb[1 : t - n + 1]]
            if ka[n - t + 1 :] != kb[1:]:
                return []
            p = ka[n - t]
            return [(mul(mul(v, h0), inv(p)),) + ka[1 : n - t]]

        s = -n - 1
        g0, w = ka[0], kb[0]
        if m <= s:
            if ka[1 : m + 1] != kb[1:]:
                return []
            return [(mul(g0, w),) + ka[m + 1 :]]
        if kb[1 : s + 1] != ka[1:]:
            return []
        p = kb[s + 1]
        return [(mul(mul(inv(p), g0), w),) + kb[s + 2 :]]

    def cup(self, a: TateElement, b: TateElement) -> TateElement:
        """a ∪ b, 차수 deg a + deg b"""
        self.spec.require_same(a.spec)
        self.spec.require_same(b.spec)
        n, m = a.degree, b.degree
        acc = TermAccumulator(self.spec)
        for ka, ca in a.terms.items():
            for kb, cb in b.terms.items():
                c = self.spec.mul(ca, cb)
                for key in self._cup_keys(ka, n, kb, m):
                    acc.add(key, c)
        return TateElement(self.spec, n + m, acc.finish())

    # ==================== m3 ====================

    def _m3_cochain_chain_cochain(self, kphi: Key, m: int, kalpha: Key, r: int, kpsi: Key, n: int) -> List[Tuple[Key, int]]:
        if r + 2 > m + n:
            return []
        G = self.group
        out = []
        for j in range(max(1, r + 2 - m), min(n, r + 1) + 1):
            if kphi[m - r + j : m + 1] != kalpha[j : r + 1]:
                continue
            if kpsi[1:j] != kalpha[1:j]:
                continue
            if kpsi[j] != G.inv(kphi[m - r + j - 1]):
                continue
            head = G.mul(G.mul(kphi[0], kalpha[0]), kpsi[0])
            key = (head,) + kphi[1 : m - r + j - 1] + kpsi[j + 1 :]
            out.append((key, 1 if (m + r + j - 1) % 2 == 0 else -1))
        return out

    def _m3_chain_cochain_chain(self, kalpha: Key, r: int, kphi: Key, m: int, kbeta: Key, s: int) -> List[Tuple[Key, int]]:
        if m - 1 > r + s:
            return []
        G = self.group
        out = []
        for j in range(max(0, s + 1 - m), min(s, r - m + s + 1) + 1):
            cut = m - s + j
            if kphi[1:cut] != kalpha[1:cut]:
                continue
            if kphi[cut + 1 :] != kbeta[j + 1 :]:
                continue
            g = kphi[cut]
            head = G.mul(G.mul(kalpha[0], kphi[0]), kbeta[0])
            key = (head,) + kbeta[1 : j + 1] + (G.inv(g),) + kalpha[cut:]
            exponent = (m + r + s - j) if self.m3_sign == "corrected" else (m - j)
            out.append((key, 1 if exponent % 2 == 0 else -1))
        return out

    def m3(self, a: TateElement, b: TateElement, c: TateElement) -> TateElement:
        """삼항 연산. (코체인, 체인, 코체인) 과 (체인, 코체인, 체인) 외에는 0"""
        for x in (a, b, c):
            self.spec.require_same(x.spec)
        da, db, dc = a.degree, b.degree, c.degree
        out_degree = da + db + dc - 1
        kernel: Callable[[Key, Key, Key], List[Tuple[Key, int]]]
        if da >= 0 and db < 0 and dc >= 0:
            r = -db - 1
            kernel = lambda x, y, z: self._m3_cochain_chain_cochain(x, da, y, r, z, dc)  # noqa: E731
        elif da < 0 and db >= 0 and dc < 0:
            r, s = -da - 1, -dc - 1
            kernel = lambda x, y, z: self._m3_chain_cochain_chain(x, r, y, db, z, s)  # noqa: E731
        else:
            return TateElement(self.spec, out_degree, {})

        spec = self.spec
        acc = TermAccumulator(spec)
        for ka, ca in a.terms.items():
            for kb, cb in b.terms.items():
                cab = spec.mul(ca, cb)
                for kc, cc in c.terms.items():
                    for key, sign in kernel(ka, kb, kc):
                        acc.add_signed(key, spec.mul(cab, cc), sign)
        return TateElement(spec, out_degree, acc.finish())

    # ==================== 통합 인터페이스 ====================

    def mult(self, k: int, args: Sequence[TateElement]) -> TateElement:
        """m_1 = ∂′, m_2 = cup, m_3 = m3, m_{k≥4} = 0"""
        if len(args) != k:
            raise DegreeError(f"m_{k} 에는 입력 {k} 개가 필요합니다: {len(args)} 개")
        if k == 1:
            return self.complex.dprime(args[0])
        if k == 2:
            return self.cup(args[0], args[1])
        if k == 3:
            return self.m3(args[0], args[1], args[2])
        return TateElement(self.spec, sum(x.degree for x in args) + 2 - k, {})
