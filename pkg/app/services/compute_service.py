# app/services/compute_service.py
from __future__ import annotations

import logging
from dataclasses import dataclass
from threading import Lock
from typing import Dict, Optional, Tuple

from app.core.config import settings
from app.core.exceptions import DegreeError
from app.models.compute import ComputeOp, ComputeRequest, ComputeResponse, TreeListResponse, TreeSignEntry, TreeSignResponse
from app.models.element import DecomposedElementModel, TateElementModel
from app.services.group_service import group_service
from app.utils.decomp import AdditiveDecomposition
from app.utils.fgroup import FiniteGroup
from app.utils.hochschild import TateComplex
from app.utils.products import M3Sign, TateProducts
from app.utils.scalars import FieldSpec
from app.utils.transfer import HomotopyTransfer
from app.utils.trees import SignPolicy, enumerate_trees, transfer_sign

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class EngineContext:
    """(G, k) 하나에 대한 복합체 / 곱 / 분해 / 전이 묶음"""

    group: FiniteGroup
    spec: FieldSpec
    complex: TateComplex
    products: TateProducts
    decomposition: AdditiveDecomposition
    transfer: HomotopyTransfer


class ComputeService:
    """엔진 문맥 캐시와 단일 연산 실행"""

    def __init__(self) -> None:
        self._contexts: Dict[Tuple[FiniteGroup, FieldSpec, str, str], EngineContext] = {}
        self._lock = Lock()

    def context(
        self,
        group: FiniteGroup,
        spec: FieldSpec,
        policy: Optional[str] = None,
        m3_sign: M3Sign = "corrected",
    ) -> EngineContext:
        policy = SignPolicy(policy or settings.sign_policy)
        key = (group, spec, policy.value, m3_sign)
        with self._lock:
            cached = self._contexts.get(key)
        if cached is not None:
            logger.debug("엔진 문맥 캐시 적중: %s / %s", group.name, spec.label)
            return cached
        complex_ = TateComplex(group, spec)
        products = TateProducts(complex_, m3_sign=m3_sign)
        decomposition = AdditiveDecomposition(complex_)
        ctx = EngineContext(group, spec, complex_, products, decomposition, HomotopyTransfer(decomposition, products, policy))
        with self._lock:
            self._contexts[key] = ctx
        logger.info("엔진 문맥 생성: %s / %s / %s / m3=%s", group.name, spec.label, policy.value, m3_sign)
        return ctx

    # ==================== 연산 ====================

    def compute(self, op: ComputeOp, request: ComputeRequest) -> ComputeResponse:
        group = group_service.resolve(request.group, request.table)
        spec = group_service.field(request.field)
        ctx = self.context(group, spec, request.policy, request.m3_sign)
        elements = [m.to_element(ctx.complex) for m in request.elements]
        decomposed = [m.to_element(ctx.decomposition.target) for m in request.decomposed]
        response = ComputeResponse(op=op, group=group.name, field=spec.label)

        def need(items, count: int, kind: str):
            if len(items) != count:
                raise DegreeError(f"{op.value} 에는 {kind} 입력 {count} 개가 필요합니다 (받은 개수 {len(items)})")
            return items

        if op is ComputeOp.DIFF:
            (a,) = need(elements, 1, "𝒟*")
            response.element = TateElementModel.from_element(ctx.complex.dprime(a))
        elif op is ComputeOp.CUP:
            a, b = need(elements, 2, "𝒟*")
            response.element = TateElementModel.from_element(ctx.products.cup(a, b))
        elif op is ComputeOp.M3:
            a, b, c = need(elements, 3, "𝒟*")
            response.element = TateElementModel.from_element(ctx.products.m3(a, b, c))
        elif op is ComputeOp.MHAT:
            n = request.n or len(decomposed)
            inputs = need(decomposed, n, "분해측")
            response.decomposed = DecomposedElementModel.from_element(ctx.transfer.mhat(n, inputs))
            if request.per_tree and n > 1:
                response.tree_terms = {
                    code: DecomposedElementModel.from_element(value)
                    for code, value in ctx.transfer.tree_terms(n, inputs).items()
                }
        elif op is ComputeOp.DECOMPOSE:
            (f,) = need(elements, 1, "𝒟*")
            parts = ctx.decomposition.project(f)
            response.components = {x: TateElementModel.from_element(part) for x, part in parts.items() if part}
            response.decomposed = DecomposedElementModel.from_element(ctx.decomposition.rho_hat(f))
        elif op is ComputeOp.IOTA:
            (e,) = need(decomposed, 1, "분해측")
            response.element = TateElementModel.from_element(ctx.decomposition.iota_hat(e))
        elif op is ComputeOp.RHO:
            (f,) = need(elements, 1, "𝒟*")
            response.decomposed = DecomposedElementModel.from_element(ctx.decomposition.rho_hat(f))
        elif op is ComputeOp.S:
            (f,) = need(elements, 1, "𝒟*")
            response.element = TateElementModel.from_element(ctx.decomposition.s_hat(f))
        logger.info("계산 완료: %s (%s / %s)", op.value, group.name, spec.label)
        return response

    # ==================== 나무 ====================

    def list_trees(self, n: int) -> TreeListResponse:
        trees = enumerate_trees(n)
        return TreeListResponse(n=n, count=len(trees), trees=[t.encode() for t in trees])

    def tree_signs(self, n: int, degrees: Tuple[int, ...]) -> TreeSignResponse:
        if len(degrees) != n:
            raise DegreeError(f"잎 {n} 개에 차수 {len(degrees)} 개가 주어졌습니다")
        ctx = self.context(group_service.resolve(), group_service.field())
        entries = [
            TreeSignEntry(
                tree=tree.encode(),
                koszul=transfer_sign(tree, degrees, SignPolicy.KOSZUL),
                printed=transfer_sign(tree, degrees, SignPolicy.PRINTED),
                flowchart=ctx.transfer.flowchart(tree, degrees),
            )
            for tree in enumerate_trees(n)
        ]
        return TreeSignResponse(n=n, degrees=list(degrees), signs=entries)


compute_service = ComputeService()
