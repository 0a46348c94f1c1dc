# app/utils/oracles.py
"""
m̂_2 의 여섯 경우 공식을 원소 수준에서 따로 구현한 대조용 계산기

트리 엔진(ι̂ → cup → ρ̂)을 거치지 않고 군 원소 곱과 ♠ / ♣ 만으로 계수를 센다.
입력 a 는 차수 n, b 는 차수 m 인 DecomposedElement.
"""

from __future__ import annotations

import logging
from itertools import product
from typing import Iterator, List, Tuple

from app.core.exceptions import TateEngineError
from app.utils.decomp import DecomposedElement
from app.utils.fgroup import ConjugacyData, clubsuit, spadesuit
from app.utils.scalars import FieldSpec
from app.utils.sparse import Key, TermAccumulator

logger = logging.getLogger(__name__)


def m2_case(n: int, m: int) -> int:
    """(n, m, n+m) 부호로 정해지는 경우 번호 1..6"""
    if n >= 0 and m >= 0:
        return 1
    if n < 0 and m < 0:
        return 2
    if n >= 0:
        return 3 if n + m <= -1 else 4
    return 5 if n + m <= -1 else 6


class ConjugatorDependenceError(TateEngineError):
    """서로 다른 켤레 원소가 서로 다른 잉여류 인덱스를 준 경우"""


class MhatOracle:
    """여섯 경우 m̂_2 공식"""

    def __init__(self, cd: ConjugacyData, spec: FieldSpec) -> None:
        self.cd = cd
        self.group = cd.group
        self.spec = spec

    # ----- 공용 헬퍼 ----- #
    def _locate(self, u: int) -> Tuple[int, int]:
        """Φ⁻¹ z Φ = u 인 대표 z 와 Φ 의 잉여류 인덱스. Φ 를 두 개 골라 인덱스가 같은지 확인"""
        G = self.group
        for z in self.cd.reps:
            phis = [phi for phi in G.elements if G.conjugate(phi, z) == u]
            if not phis:
                continue
            index = self.cd.coset_index[z]
            first = index[phis[0]][0]
            if len(phis) > 1 and index[phis[-1]][0] != first:
                raise ConjugatorDependenceError(f"u={u}: 켤레 원소 {phis[0]}, {phis[-1]} 의 잉여류가 다릅니다")
            return z, first
        raise TateEngineError(f"{u} 의 켤레류 대표를 찾지 못했습니다")

    def _bar_tuples(self, z: int, length: int) -> Iterator[Tuple[int, ...]]:
        return product(self.cd.centralizer_nonidentity(z), repeat=length)

    def _member(self, x: int, i: int) -> int:
        return self.cd.classes[x][i]

    # ==================== 경우별 기저 공식 ====================

    def case1(self, x: int, g: Key, y: int, h: Key) -> List[Key]:
        """코체인 × 코체인: x_i W y_j W⁻¹ = z, W = h_1 의 곱"""
        G = self.group
        n, m = len(g), len(h)
        out: List[Key] = []
        for z in self.cd.reps:
            for word in self._bar_tuples(z, n + m):
                left, right = word[:n], word[n:]
                w = G.prod(left)
                for i in range(self.cd.n_cosets(x)):
                    if spadesuit(self.cd, x, i, left)[0] != g:
                        continue
                    for j in range(self.cd.n_cosets(y)):
                        if spadesuit(self.cd, y, j, right)[0] != h:
                            continue
                        value = G.mul(G.mul(G.mul(self._member(x, i), w), self._member(y, j)), G.inv(w))
                        if value == z:
                            out.append((z,) + word)
        return out

    def case2(self, x: int, g: Key, y: int, h: Key) -> List[Key]:
        """체인 × 체인: ♣ 로 슬롯을 만들고 켤레 탐색 후 ♠"""
        G = self.group
        head_b = G.mul(G.inv(G.prod(h)), y)
        out: List[Key] = []
        for c in G.elements:
            slots = clubsuit(G, x, c, g, h)
            if G.identity in slots:
                continue
            u = G.mul(G.prod(slots), G.mul(c, head_b))
            z, i = self._locate(u)
            hs, _ = spadesuit(self.cd, z, i, slots)
            if G.identity not in hs:
                out.append((z,) + hs)
        return out

    def case3(self, x: int, g: Key, y: int, h: Key) -> List[Key]:
        """코체인 × 체인, n ≤ t: H_1 x_i H_1⁻¹ y"""
        G = self.group
        n, t = len(g), len(h)
        h1, h2 = h[: t - n], h[t - n :]
        w = G.prod(h1)
        out: List[Key] = []
        for i in range(self.cd.n_cosets(x)):
            if spadesuit(self.cd, x, i, h2)[0] != g:
                continue
            u = G.mul(G.mul(G.mul(w, self._member(x, i)), G.inv(w)), y)
            z, p = self._locate(u)
            hs, _ = spadesuit(self.cd, z, p, h1)
            if G.identity not in hs:
                out.append((z,) + hs)
        return out

    def case4(self, x: int, g: Key, y: int, h: Key) -> List[Key]:
        """코체인 × 체인, n ≥ t+1: x_i G′ p y p⁻¹ G′⁻¹ = z"""
        G = self.group
        n, t = len(g), len(h)
        out: List[Key] = []
        for z in self.cd.reps:
            for head in self._bar_tuples(z, n - t - 1):
                w = G.prod(head)
                for p in G.nonidentity:
                    word = head + (p,) + tuple(h)
                    inner = G.mul(G.mul(p, y), G.inv(p))
                    for i in range(self.cd.n_cosets(x)):
                        if spadesuit(self.cd, x, i, word)[0] != g:
                            continue
                        value = G.mul(G.mul(G.mul(self._member(x, i), w), inner), G.inv(w))
                        if value == z:
                            out.append((z,) + head)
        return out

    def case5(self, x: int, g: Key, y: int, h: Key) -> List[Key]:
        """체인 × 코체인, m ≤ s: L⁻¹ x y_j L"""
        G = self.group
        m = len(h)
        left, rest = tuple(g[:m]), tuple(g[m:])
        w = G.prod(left)
        out: List[Key] = []
        for j in range(self.cd.n_cosets(y)):
            if spadesuit(self.cd, y, j, left)[0] != h:
                continue
            u = G.mul(G.mul(G.inv(w), G.mul(x, self._member(y, j))), w)
            z, p = self._locate(u)
            hs, _ = spadesuit(self.cd, z, p, rest)
            if G.identity not in hs:
                out.append((z,) + hs)
        return out

    def case6(self, x: int, g: Key, y: int, h: Key) -> List[Key]:
        """체인 × 코체인, m ≥ s+1: q⁻¹ W⁻¹ x y_j W q = z"""
        G = self.group
        s, m = len(g), len(h)
        w = G.prod(g)
        out: List[Key] = []
        for z in self.cd.reps:
            for tail in self._bar_tuples(z, m - s - 1):
                for q in G.nonidentity:
                    word = tuple(g) + (q,) + tail
                    conj = G.mul(w, q)
                    for j in range(self.cd.n_cosets(y)):
                        if spadesuit(self.cd, y, j, word)[0] != h:
                            continue
                        value = G.mul(G.mul(G.inv(conj), G.mul(x, self._member(y, j))), conj)
                        if value == z:
                            out.append((z,) + tail)
        return out

    # ==================== 선형 확장 ====================

    def m2(self, a: DecomposedElement, b: DecomposedElement) -> DecomposedElement:
        self.spec.require_same(a.spec)
        self.spec.require_same(b.spec)
        case = m2_case(a.degree, b.degree)
        kernel = getattr(self, f"case{case}")
        acc = TermAccumulator(self.spec)
        for ka, ca in a.terms.items():
            for kb, cb in b.terms.items():
                c = self.spec.mul(ca, cb)
                for key in kernel(ka[0], ka[1:], kb[0], kb[1:]):
                    acc.add(key, c)
        return DecomposedElement(self.spec, a.degree + b.degree, acc.finish())

