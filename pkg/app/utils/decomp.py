# app/utils/decomp.py
"""
가법 분해: 𝒟*(kG, kG) ⇄ ⊕_x Ĉ*(C_G(x), k)

DecomposedElement 키는 (x, h_1, ..., h_k) 이며 x 는 류 대표, h 는 C_G(x) 의 비항등 원소.
k 는 m ≥ 0 이면 m, m ≤ -1 이면 -m-1.

ι̂ / ρ̂ / ŝ 는 강한 변형 수축 (ρ̂ι̂ = id, id - ι̂ρ̂ = ∂′ŝ + ŝ∂′, ŝ² = ŝι̂ = ρ̂ŝ = 0) 을 이룬다.
"""

from __future__ import annotations

import logging
from itertools import product
from typing import Dict, Iterator, List, Tuple

from app.core.exceptions import DegreeError, MembershipError
from app.utils.fgroup import ConjugacyData, conjugacy, spadesuit, spadesuit_preimages
from app.utils.hochschild import TateComplex, TateElement
from app.utils.scalars import FieldSpec
from app.utils.sparse import GradedVector, Key, TermAccumulator

logger = logging.getLogger(__name__)


class DecomposedElement(GradedVector):
    """⊕_x Ĉ^m(C_G(x), k) 의 동차 원소"""

    __slots__ = ()

    @property
    def classes(self) -> Tuple[int, ...]:
        return tuple(sorted({key[0] for key in self.terms}))

    def component(self, x: int) -> "DecomposedElement":
        return DecomposedElement(self.spec, self.degree, {k: c for k, c in self.terms.items() if k[0] == x})


class CentralizerComplex:
    """각 류 대표 x 에 대한 Ĉ*(C_G(x), k) 의 직합 (자명 계수)"""

    def __init__(self, cd: ConjugacyData, spec: FieldSpec) -> None:
        self.cd = cd
        self.group = cd.group
        self.spec = spec

    def zero(self, degree: int) -> DecomposedElement:
        return DecomposedElement(self.spec, degree, {})

    def element(self, degree: int, terms: Dict[Key, object]) -> DecomposedElement:
        width = degree if degree >= 0 else -degree - 1
        acc = TermAccumulator(self.spec)
        for key, coeff in terms.items():
            key = tuple(int(v) for v in key)
            x, hs = key[0], key[1:]
            if x not in self.cd.centralizers:
                raise MembershipError(f"{x} 는 켤레류 대표가 아닙니다 (대표: {list(self.cd.reps)})")
            if len(hs) != width:
                raise DegreeError(f"차수 {degree} 의 성분 길이는 {width} 이어야 합니다: {key}")
            if any(not self.cd.in_centralizer(x, h) for h in hs):
                raise MembershipError(f"{hs} 가 C_G({x}) 에 들어있지 않습니다")
            if any(h == self.group.identity for h in hs):
                continue
            acc.add(key, self.spec.coerce(coeff))
        return DecomposedElement(self.spec, degree, acc.finish())

    def basis(self, degree: int) -> Iterator[Key]:
        width = degree if degree >= 0 else -degree - 1
        for x in self.cd.reps:
            for hs in product(self.cd.centralizer_nonidentity(x), repeat=width):
                yield (x,) + hs

    def basis_size(self, degree: int) -> int:
        width = degree if degree >= 0 else -degree - 1
        return sum(len(self.cd.centralizer_nonidentity(x)) ** width for x in self.cd.reps)

    def basis_element(self, key: Key, degree: int) -> DecomposedElement:
        return DecomposedElement(self.spec, degree, {tuple(key): 1})

    def decomposed_diff(self, e: DecomposedElement) -> DecomposedElement:
        """
        류별 Tate 미분 (자명 계수)

        m ≥ 0: δ (m = 0 에서는 두 끝항이 상쇄되어 0)
        m = -1: τ(1) = |C_G(x)|
        m ≤ -2: (-1)^{m+1} ∂_s, ∂_1 = 0
        """
        self.spec.require_same(e.spec)
        m = e.degree
        G = self.group
        spec = self.spec
        acc = TermAccumulator(spec)
        if m >= 0:
            for key, c in e.terms.items():
                x, hs = key[0], key[1:]
                bar = self.cd.centralizer_nonidentity(x)
                for k in bar:
                    acc.add((x, k) + hs, c)
                    acc.add_signed((x,) + hs + (k,), c, 1 if (m + 1) % 2 == 0 else -1)
                for i, hi in enumerate(hs):
                    for a in bar:
                        if a == hi:
                            continue
                        acc.add_signed((x,) + hs[:i] + (a, G.mul(G.inv(a), hi)) + hs[i + 1 :], c, -1 if i % 2 == 0 else 1)
            return DecomposedElement(spec, m + 1, acc.finish())
        if m == -1:
            for (x,), c in e.terms.items():
                acc.add((x,), spec.mul(c, spec.coerce(len(self.cd.centralizers[x]))))
            return DecomposedElement(spec, 0, acc.finish())

        s = -m - 1
        outer = 1 if (m + 1) % 2 == 0 else -1
        for key, c in e.terms.items():
            x, hs = key[0], key[1:]
            acc.add_signed((x,) + hs[1:], c, outer)
            for i in range(1, s):
                merged = G.mul(hs[i - 1], hs[i])
                if merged == G.identity:
                    continue
                acc.add_signed((x,) + hs[: i - 1] + (merged,) + hs[i + 1 :], c, outer * (1 if i % 2 == 0 else -1))
            acc.add_signed((x,) + hs[:-1], c, outer * (1 if s % 2 == 0 else -1))
        return DecomposedElement(spec, m + 1, acc.finish())


class AdditiveDecomposition:
    """
    𝒟* 와 ⊕_x Ĉ*(C_G(x), k) 사이의 수축 데이터 (ι̂, ρ̂, ŝ)

    Args:
        complex_: 𝒟*(kG, kG)
    """

    def __init__(self, complex_: TateComplex) -> None:
        self.complex = complex_
        self.group = complex_.group
        self.spec = complex_.spec
        self.cd = conjugacy(self.group)
        self.target = CentralizerComplex(self.cd, self.spec)

    # ==================== 류 성분 분리 ====================

    def class_of_key(self, key: Key, degree: int) -> int:
        G = self.group
        if degree >= 0:
            return self.cd.class_of[G.mul(key[0], G.inv(G.prod(key[1:])))]
        return self.cd.class_of[G.mul(G.prod(key[1:]), key[0])]

    def project(self, f: TateElement) -> Dict[int, TateElement]:
        """각 항을 소속 류 x 의 성분 𝓗^{x,*} / 𝓗_{x,*} 로 나눈다. 성분의 합은 f"""
        parts: Dict[int, Dict[Key, object]] = {x: {} for x in self.cd.reps}
        for key, c in f.terms.items():
            parts[self.class_of_key(key, f.degree)][key] = c
        return {x: TateElement(self.spec, f.degree, terms) for x, terms in parts.items()}

    def class_component(self, f: TateElement, x: int) -> TateElement:
        """f 전체가 x 성분이어야 하는 경우의 엄격한 추출"""
        outside = [key for key in f.terms if self.class_of_key(key, f.degree) != x]
        if outside:
            raise MembershipError(f"류 {x} 성분 밖의 항이 있습니다: {outside[0]}")
        return f

    # ==================== ι̂ ====================

    def iota_hat(self, e: DecomposedElement) -> TateElement:
        self.spec.require_same(e.spec)
        G = self.group
        cd = self.cd
        m = e.degree
        acc = TermAccumulator(self.spec)
        if m >= 0:
            for key, c in e.terms.items():
                x, hs = key[0], key[1:]
                members = cd.classes[x]
                for i in range(cd.n_cosets(x)):
                    for gs, _ in spadesuit_preimages(cd, x, i, hs):
                        if G.identity in gs:
                            continue
                        acc.add((G.mul(members[i], G.prod(gs)),) + gs, c)
        else:
            for key, c in e.terms.items():
                x, hs = key[0], key[1:]
                acc.add((G.mul(G.inv(G.prod(hs)), x),) + hs, c)
        return TateElement(self.spec, m, acc.finish())

    # ==================== ρ̂ ====================

    def rho_hat(self, f: TateElement) -> DecomposedElement:
        self.spec.require_same(f.spec)
        G = self.group
        cd = self.cd
        m = f.degree
        acc = TermAccumulator(self.spec)
        if m >= 0:
            for key, c in f.terms.items():
                gs = key[1:]
                x = G.mul(key[0], G.inv(G.prod(gs)))
                if cd.class_of[x] != x:
                    continue
                if all(cd.in_centralizer(x, g) for g in gs):
                    acc.add((x,) + gs, c)
        else:
            for key, c in f.terms.items():
                a, gs = key[0], key[1:]
                u = G.mul(G.prod(gs), a)
                x, i = cd.class_of[u], cd.position[u]
                hs, _ = spadesuit(cd, x, i, gs)
                if G.identity in hs:
                    continue
                acc.add((x,) + hs, c)
        return DecomposedElement(self.spec, m, acc.finish())

    # ==================== ŝ ====================

    def _cochain_homotopy(self, f: TateElement) -> TateElement:
        G = self.group
        cd = self.cd
        m = f.degree
        acc = TermAccumulator(self.spec)
        if m == 0:
            return TateElement(self.spec, -1, {})
        for key, c in f.terms.items():
            v, ks = key[0], key[1:]
            x = G.mul(v, G.inv(G.prod(ks)))
            # 류 대표 x 위의 계수만 ŝ 에 들어가고 나머지 류 원소 x_k 의 계수는 버린다
            if cd.class_of[x] != x:
                continue
            gammas = cd.coset_reps[x]
            for j in range(m):
                if not all(cd.in_centralizer(x, k) for k in ks[:j]):
                    break
                t = gammas.index(ks[j]) if ks[j] in gammas else 0
                if t == 0:
                    continue
                sign = 1 if j % 2 == 0 else -1
                for i in range(cd.n_cosets(x)):
                    for gs, final in spadesuit_preimages(cd, x, i, ks[:j]):
                        if final != t or G.identity in gs:
                            continue
                        acc.add_signed((G.mul(G.inv(gammas[i]), v),) + gs + ks[j + 1 :], c, sign)
        return TateElement(self.spec, m - 1, acc.finish())

    def _chain_homotopy_terms(self, f: TateElement) -> Dict[Key, object]:
        G = self.group
        cd = self.cd
        m = f.degree
        acc = TermAccumulator(self.spec)
        for key, c in f.terms.items():
            a, gs = key[0], key[1:]
            n = len(gs)
            u = G.mul(G.prod(gs), a)
            x, i = cd.class_of[u], cd.position[u]
            gammas = cd.coset_reps[x]
            hs, _, trace = spadesuit(cd, x, i, gs, with_trace=True)
            head = G.mul(G.inv(G.mul(gammas[i], G.prod(gs))), x)
            for j in range(n + 1):
                if trace[j] == 0 or G.identity in hs[:j]:
                    continue
                acc.add_signed((head,) + hs[:j] + (gammas[trace[j]],) + gs[j:], c, 1 if j % 2 == 0 else -1)
        return acc.finish()

    def chain_homotopy(self, f: TateElement) -> TateElement:
        """부호 보정 전의 호몰로지 측 호모토피 s_{x,n} (코체인 측은 s_hat 과 같다)"""
        self.spec.require_same(f.spec)
        if f.degree >= 0:
            return self._cochain_homotopy(f)
        return TateElement(self.spec, f.degree - 1, self._chain_homotopy_terms(f))

    def s_hat(self, f: TateElement) -> TateElement:
        """
        수축 호모토피 ŝ (차수 -1)

        체인 측에서는 ∂′ 의 부호 보정에 맞춰 𝒟^m 위에서 (-1)^m 을 곱한다.
        """
        out = self.chain_homotopy(f)
        if f.degree < 0 and f.degree % 2 == 1:
            return out.scale(-1)
        return out
