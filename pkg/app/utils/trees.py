# app/utils/trees.py
"""
꼭짓점 차수가 2 또는 3 인 평면 뿌리 나무와 호모토피 전이 부호
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from itertools import product
from typing import List, Optional, Sequence, Tuple, Union

from app.core.exceptions import DegreeError, TateEngineError
from app.utils.scalars import FieldScalar, FieldSpec


@dataclass(frozen=True)
class PlanarTree:
    """children 이 비어 있으면 잎, 아니면 2 개 또는 3 개의 자식을 가진 내부 꼭짓점"""

    children: Tuple["PlanarTree", ...] = ()

    def __post_init__(self) -> None:
        if self.children and len(self.children) not in (2, 3):
            raise TateEngineError(f"내부 꼭짓점 차수는 2 또는 3 이어야 합니다: {len(self.children)}")

    @property
    def is_leaf(self) -> bool:
        return not self.children

    @property
    def leaves(self) -> int:
        if self.is_leaf:
            return 1
        return sum(child.leaves for child in self.children)

    @property
    def vertices(self) -> int:
        if self.is_leaf:
            return 0
        return 1 + sum(child.vertices for child in self.children)

    @property
    def internal_edges(self) -> int:
        return max(self.vertices - 1, 0)

    def encode(self) -> str:
        if self.is_leaf:
            return "."
        return "(" + ",".join(child.encode() for child in self.children) + ")"

    def __str__(self) -> str:
        return self.encode()

    @classmethod
    def parse(cls, text: str) -> "PlanarTree":
        """'((.,.),.)' 형식 파싱"""
        compact = "".join(text.split())
        tree, pos = cls._parse_at(compact, 0)
        if pos != len(compact):
            raise TateEngineError(f"나무 표기 뒤에 남은 문자가 있습니다: {text!r}")
        return tree

    @classmethod
    def _parse_at(cls, text: str, pos: int) -> Tuple["PlanarTree", int]:
        if pos >= len(text):
            raise TateEngineError("나무 표기가 중간에 끝났습니다")
        if text[pos] == ".":
            return LEAF, pos + 1
        if text[pos] != "(":
            raise TateEngineError(f"예상치 못한 문자 {text[pos]!r} (위치 {pos})")
        children: List[PlanarTree] = []
        pos += 1
        while True:
            child, pos = cls._parse_at(text, pos)
            children.append(child)
            if pos < len(text) and text[pos] == ",":
                pos += 1
                continue
            if pos < len(text) and text[pos] == ")":
                return cls(tuple(children)), pos + 1
            raise TateEngineError(f"닫는 괄호가 필요합니다 (위치 {pos})")


LEAF = PlanarTree()


def _compositions(n: int, parts: int) -> List[Tuple[int, ...]]:
    if parts == 1:
        return [(n,)] if n >= 1 else []
    out = []
    for first in range(1, n - parts + 2):
        out.extend((first,) + rest for rest in _compositions(n - first, parts - 1))
    return out


@lru_cache(maxsize=None)
def enumerate_trees(n: int) -> Tuple[PlanarTree, ...]:
    """
    잎 n 개의 {2,3}-차 평면 나무 전체

    순서: 이진 뿌리 (왼쪽 잎 수 1..n-1) 를 먼저, 그다음 삼진 뿌리 (사전식 분할).
    개수는 1, 1, 3, 10, 38, 154, ...
    """
    if n < 1:
        raise TateEngineError(f"잎 개수는 1 이상이어야 합니다: {n}")
    if n == 1:
        return (LEAF,)
    out: List[PlanarTree] = []
    for arity in (2, 3):
        for sizes in _compositions(n, arity):
            for kids in product(*(enumerate_trees(k) for k in sizes)):
                out.append(PlanarTree(tuple(kids)))
    return tuple(out)


class SignPolicy(str, Enum):
    KOSZUL = "koszul"
    PRINTED = "printed"


def _c(k: int) -> int:
    return -1 if (k * (k - 1) // 2) % 2 else 1


def _shift_sign(degrees: Sequence[int]) -> int:
    k = len(degrees)
    exponent = sum((k - j) * (d - 1) for j, d in enumerate(degrees, start=1))
    return _c(k) * (-1 if exponent % 2 else 1)


def _subtree_sign(tree: PlanarTree, degrees: Sequence[int]) -> Tuple[int, int]:
    """
    (부호, 출력 차수)

    내부 자식의 합성 -ŝ∘b 는 현수 형태에서 짝수 사상이므로 자식 사이에 Koszul 부호가 붙지 않습니다.
    """
    if tree.is_leaf:
        return 1, degrees[0]
    sign = 1
    offset = 0
    arg_degrees: List[int] = []
    for child in tree.children:
        child_sign, out = _subtree_sign(child, degrees[offset : offset + child.leaves])
        offset += child.leaves
        sign *= child_sign
        arg_degrees.append(out if child.is_leaf else out - 1)
    sign *= _shift_sign(arg_degrees)
    out_degree = sum(arg_degrees) + 2 - len(tree.children)
    return sign, out_degree


def transfer_sign(
    tree: PlanarTree,
    degrees: Sequence[int],
    policy: Union[SignPolicy, str] = SignPolicy.KOSZUL,
    spec: Optional[FieldSpec] = None,
) -> Union[int, FieldScalar]:
    """
    나무 하나와 입력 차수 목록에 대한 전이 부호 (±1)

    KOSZUL: 현수(bar) 형태에서 나무를 합성할 때의 Koszul 부호를 되돌린 값.
    PRINTED: KOSZUL 에 (-1)^{내부 변 수} 를 곱한 값 (n = 3 에서 왼쪽 빗 -1, 오른쪽 빗 +1).
    """
    if tree.leaves != len(degrees):
        raise DegreeError(f"잎 {tree.leaves} 개에 차수 {len(degrees)} 개가 주어졌습니다")
    policy = SignPolicy(policy)
    if tree.is_leaf:
        sign = 1
    else:
        body, _ = _subtree_sign(tree, degrees)
        sign = _shift_sign(degrees) * body
        if policy is SignPolicy.KOSZUL and tree.internal_edges % 2:
            sign = -sign
    if spec is not None:
        return spec.scalar(sign)
    return sign
