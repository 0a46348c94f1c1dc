# app/utils/transfer.py
"""
평면 나무 합성으로 계산하는 전이된 A∞ 연산 m̂_n

잎에는 ι̂, 꼭짓점에는 cup(2 갈래) / m3(3 갈래), 내부 변에는 ŝ, 뿌리에는 ρ̂ 를 놓는다.
"""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass
from typing import Dict, List, Sequence, Tuple, Union

from app.core.exceptions import DegreeError, TateEngineError
from app.utils.decomp import AdditiveDecomposition, DecomposedElement
from app.utils.hochschild import TateElement
from app.utils.products import TateProducts
from app.utils.trees import PlanarTree, SignPolicy, enumerate_trees, transfer_sign

logger = logging.getLogger(__name__)

Element = Union[DecomposedElement, TateElement]


@dataclass(frozen=True)
class LocalOp:
    """
    한 꼭짓점짜리 합성 α / β

    root: "alpha" 면 뿌리에 ρ̂, "beta" 면 ŝ
    ends: 갈래별 (lifted, sign). lifted=True 는 ι̂ 로 올릴 입력("1"), False 는 이미 𝒟* 원소("0").
          sign 은 입력 차수의 부호 ("+" 는 ≥ 0, "-" 는 < 0)
    out_sign: 꼭짓점 출력 차수의 부호
    """

    root: str
    ends: Tuple[Tuple[bool, str], ...]
    out_sign: str

    _PATTERN = re.compile(r"^(alpha|beta)\((.*)\)$")

    def __post_init__(self) -> None:
        if self.root not in ("alpha", "beta"):
            raise TateEngineError(f"root 는 alpha 또는 beta 여야 합니다: {self.root}")
        if len(self.ends) not in (2, 3):
            raise TateEngineError(f"local op 의 갈래는 2 또는 3 개입니다: {len(self.ends)}")
        for _, sign in self.ends + ((True, self.out_sign),):
            if sign not in ("+", "-"):
                raise TateEngineError(f"부호 표기는 + 또는 - 입니다: {sign!r}")

    @classmethod
    def parse(cls, text: str) -> "LocalOp":
        """'alpha(1+,1-,+)' / 'beta(0+,1+,1-,-)' 형식"""
        compact = "".join(text.split()).replace("α", "alpha").replace("β", "beta")
        match = cls._PATTERN.match(compact)
        if not match:
            raise TateEngineError(f"local op 표기를 읽을 수 없습니다: {text!r}")
        parts = match.group(2).split(",")
        if len(parts) < 3:
            raise TateEngineError(f"갈래와 출력 부호가 필요합니다: {text!r}")
        ends = []
        for part in parts[:-1]:
            if len(part) != 2 or part[0] not in "01":
                raise TateEngineError(f"갈래 표기는 1+ / 1- / 0+ / 0- 입니다: {part!r}")
            ends.append((part[0] == "1", part[1]))
        return cls(match.group(1), tuple(ends), parts[-1])

    def encode(self) -> str:
        body = ",".join(("1" if lifted else "0") + sign for lifted, sign in self.ends)
        return f"{self.root}({body},{self.out_sign})"


def _degree_sign(degree: int) -> str:
    return "+" if degree >= 0 else "-"


class HomotopyTransfer:
    """
    m̂_n 계산기

    Args:
        decomposition: (ι̂, ρ̂, ŝ) 수축 데이터
        products: 𝒟* 의 cup / m3
        policy: 나무 부호 규칙
    """

    def __init__(
        self,
        decomposition: AdditiveDecomposition,
        products: TateProducts,
        policy: Union[SignPolicy, str] = SignPolicy.KOSZUL,
    ) -> None:
        self.decomposition = decomposition
        self.products = products
        self.policy = SignPolicy(policy)
        self.spec = decomposition.spec

    # ==================== 나무 합성 ====================

    def _check_inputs(self, inputs: Sequence[DecomposedElement], leaves: int) -> None:
        if len(inputs) != leaves:
            raise DegreeError(f"잎 {leaves} 개에 입력 {len(inputs)} 개가 주어졌습니다")
        for x in inputs:
            if not isinstance(x, DecomposedElement):
                raise DegreeError("m̂ 입력은 동차 DecomposedElement 여야 합니다")
            self.spec.require_same(x.spec)

    def _vertex(self, args: Sequence[TateElement]) -> TateElement:
        if len(args) == 2:
            return self.products.cup(args[0], args[1])
        return self.products.m3(args[0], args[1], args[2])

    def _composite(self, tree: PlanarTree, lifted: Sequence[TateElement]) -> TateElement:
        """ŝ 와 뿌리 ρ̂ 를 붙이기 전의 꼭짓점 출력"""
        args: List[TateElement] = []
        offset = 0
        for child in tree.children:
            if child.is_leaf:
                args.append(lifted[offset])
            else:
                inner = self._composite(child, lifted[offset : offset + child.leaves])
                args.append(self.decomposition.s_hat(inner))
            offset += child.leaves
        return self._vertex(args)

    def eval_tree(self, tree: PlanarTree, inputs: Sequence[DecomposedElement]) -> DecomposedElement:
        """부호 · ρ̂(나무 합성(ι̂ a_1, ..., ι̂ a_n))"""
        self._check_inputs(inputs, tree.leaves)
        if tree.is_leaf:
            return inputs[0]
        lifted = [self.decomposition.iota_hat(x) for x in inputs]
        return self._signed_root(tree, inputs, self._composite(tree, lifted))

    def _signed_root(self, tree: PlanarTree, inputs: Sequence[DecomposedElement], value: TateElement) -> DecomposedElement:
        out = self.decomposition.rho_hat(value)
        sign = transfer_sign(tree, [x.degree for x in inputs], self.policy)
        return out if sign > 0 else out.scale(-1)

    def mhat(self, n: int, inputs: Sequence[DecomposedElement]) -> DecomposedElement:
        """m̂_1 = 분해측 미분, m̂_n = Σ_{나무} eval_tree"""
        if n < 1:
            raise DegreeError(f"m̂_n 의 n 은 1 이상이어야 합니다: {n}")
        self._check_inputs(inputs, n)
        if n == 1:
            return self.decomposition.target.decomposed_diff(inputs[0])
        degree = sum(x.degree for x in inputs) + 2 - n
        lifted = [self.decomposition.iota_hat(x) for x in inputs]
        total = DecomposedElement(self.spec, degree, {})
        for tree in enumerate_trees(n):
            total = total + self._signed_root(tree, inputs, self._composite(tree, lifted))
        return total

    def tree_terms(self, n: int, inputs: Sequence[DecomposedElement]) -> Dict[str, DecomposedElement]:
        """나무별 기여 (표기 → 값)"""
        self._check_inputs(inputs, n)
        return {tree.encode(): self.eval_tree(tree, inputs) for tree in enumerate_trees(n)}

    # ==================== α / β 국소 연산 ====================

    def local_op(self, op: Union[LocalOp, str], inputs: Sequence[Element]) -> Element:
        """
        한 꼭짓점 합성. "1" 갈래 입력은 DecomposedElement (ι̂ 적용), "0" 갈래는 TateElement.

        Returns:
            alpha 면 DecomposedElement (ρ̂), beta 면 TateElement (ŝ)
        """
        if isinstance(op, str):
            op = LocalOp.parse(op)
        if len(inputs) != len(op.ends):
            raise DegreeError(f"{op.encode()} 에는 입력 {len(op.ends)} 개가 필요합니다")
        args: List[TateElement] = []
        for (lifted, sign), x in zip(op.ends, inputs):
            self.spec.require_same(x.spec)
            if _degree_sign(x.degree) != sign:
                raise DegreeError(f"{op.encode()}: 차수 {x.degree} 입력이 부호 {sign} 갈래에 맞지 않습니다")
            if lifted:
                if not isinstance(x, DecomposedElement):
                    raise DegreeError(f"{op.encode()}: '1' 갈래에는 DecomposedElement 가 필요합니다")
                args.append(self.decomposition.iota_hat(x))
            else:
                if not isinstance(x, TateElement):
                    raise DegreeError(f"{op.encode()}: '0' 갈래에는 TateElement 가 필요합니다")
                args.append(x)
        out_degree = sum(a.degree for a in args) + 2 - len(args)
        if _degree_sign(out_degree) != op.out_sign:
            raise DegreeError(f"{op.encode()}: 출력 차수 {out_degree} 가 부호 {op.out_sign} 와 맞지 않습니다")
        value = self._vertex(args)
        if op.root == "alpha":
            return self.decomposition.rho_hat(value)
        return self.decomposition.s_hat(value)

    def _flow(self, tree: PlanarTree, inputs: Sequence[DecomposedElement], root: str) -> Element:
        args: List[Element] = []
        ends: List[Tuple[bool, str]] = []
        offset = 0
        for child in tree.children:
            if child.is_leaf:
                x: Element = inputs[offset]
                ends.append((True, _degree_sign(x.degree)))
            else:
                x = self._flow(child, inputs[offset : offset + child.leaves], "beta")
                ends.append((False, _degree_sign(x.degree)))
            args.append(x)
            offset += child.leaves
        out_degree = sum(a.degree for a in args) + 2 - len(args)
        op = LocalOp(root, tuple(ends), _degree_sign(out_degree))
        logger.debug("flowchart 단계: %s", op.encode())
        return self.local_op(op, args)

    def eval_tree_by_local_ops(self, tree: PlanarTree, inputs: Sequence[DecomposedElement]) -> DecomposedElement:
        """eval_tree 를 꼭짓점별 α / β 연산의 반복으로 다시 계산"""
        self._check_inputs(inputs, tree.leaves)
        if tree.is_leaf:
            return inputs[0]
        out = self._flow(tree, inputs, "alpha")
        sign = transfer_sign(tree, [x.degree for x in inputs], self.policy)
        return out if sign > 0 else out.scale(-1)

    def flowchart(self, tree: PlanarTree, degrees: Sequence[int]) -> List[str]:
        """입력 차수만으로 정해지는 α / β 단계 목록 (잎에서 뿌리 순서)"""
        steps: List[str] = []

        def walk(node: PlanarTree, degs: Sequence[int], root: str) -> int:
            ends = []
            out_degrees = []
            offset = 0
            for child in node.children:
                if child.is_leaf:
                    d = degs[offset]
                    ends.append((True, _degree_sign(d)))
                else:
                    d = walk(child, degs[offset : offset + child.leaves], "beta")
                    ends.append((False, _degree_sign(d)))
                out_degrees.append(d)
                offset += child.leaves
            out_degree = sum(out_degrees) + 2 - len(out_degrees)
            steps.append(LocalOp(root, tuple(ends), _degree_sign(out_degree)).encode())
            return out_degree - 1 if root == "beta" else out_degree

        if tree.leaves != len(degrees):
            raise DegreeError(f"잎 {tree.leaves} 개에 차수 {len(degrees)} 개가 주어졌습니다")
        if not tree.is_leaf:
            walk(tree, degrees, "alpha")
        return steps
