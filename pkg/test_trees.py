# test_trees.py
"""평면 나무 열거 / 표기 / 전이 부호 테스트"""

import pytest
from hypothesis import given
from hypothesis import strategies as st

from app.core.exceptions import DegreeError, TateEngineError
from app.utils.scalars import FieldSpec
from app.utils.trees import LEAF, PlanarTree, SignPolicy, enumerate_trees, transfer_sign

LEFT_COMB = PlanarTree.parse("((.,.),.)")
RIGHT_COMB = PlanarTree.parse("(.,(.,.))")
COROLLA = PlanarTree.parse("(.,.,.)")


@pytest.mark.parametrize("n, count", [(1, 1), (2, 1), (3, 3), (4, 10), (5, 38)])
def test_tree_counts(n, count):
    trees = enumerate_trees(n)
    assert len(trees) == count
    assert len(set(trees)) == count
    assert all(t.leaves == n for t in trees)


def test_enumeration_order_for_three_leaves():
    assert [t.encode() for t in enumerate_trees(3)] == ["(.,(.,.))", "((.,.),.)", "(.,.,.)"]


def test_encoding_parses_back():
    for tree in enumerate_trees(4):
        assert PlanarTree.parse(tree.encode()) == tree
    assert PlanarTree.parse(" ( . , . ) ").leaves == 2


@pytest.mark.parametrize("text", ["(.,.", "(.)", "(.,.,.,.)", "x", "(.,.))", ""])
def test_parse_rejects_malformed(text):
    with pytest.raises(TateEngineError):
        PlanarTree.parse(text)


def test_tree_shape_counts():
    assert LEFT_COMB.vertices == 2
    assert LEFT_COMB.internal_edges == 1
    assert COROLLA.internal_edges == 0
    assert LEAF.is_leaf and LEAF.vertices == 0


def test_enumerate_rejects_zero_leaves():
    with pytest.raises(TateEngineError):
        enumerate_trees(0)


# ==================== 부호 ====================

@given(a=st.integers(-4, 4), b=st.integers(-4, 4), c=st.integers(-4, 4))
def test_koszul_signs_for_three_leaves(a, b, c):
    assert transfer_sign(LEFT_COMB, [a, b, c]) == 1
    assert transfer_sign(RIGHT_COMB, [a, b, c]) == (1 if a % 2 else -1)
    assert transfer_sign(COROLLA, [a, b, c]) == 1


@given(degrees=st.lists(st.integers(-3, 3), min_size=4, max_size=4))
def test_printed_policy_differs_by_internal_edges(degrees):
    for tree in enumerate_trees(4):
        koszul = transfer_sign(tree, degrees, SignPolicy.KOSZUL)
        printed = transfer_sign(tree, degrees, "printed")
        assert printed == koszul * (-1) ** tree.internal_edges


def test_koszul_signs_for_nested_right_subtrees():
    # 2 꼭짓점 자식이 오른쪽에 있어도 자식 사이 Koszul 부호는 없음
    assert transfer_sign(PlanarTree.parse("(.,((.,.),.))"), [0, 0, 1, 1]) == -1
    assert transfer_sign(PlanarTree.parse("(.,(.,(.,.)))"), [0, 0, 1, 1]) == 1
    assert transfer_sign(PlanarTree.parse("(.,((.,.),.))"), [-1, 0, 1, 1]) == -1


def test_binary_root_sign_in_degree_zero():
    assert transfer_sign(PlanarTree.parse("(.,.)"), [0, 0]) == 1


def test_leaf_sign_and_scalar_output():
    assert transfer_sign(LEAF, [5]) == 1
    scalar = transfer_sign(RIGHT_COMB, [0, 0, 0], spec=FieldSpec(3))
    assert scalar.value == 2


def test_sign_rejects_wrong_arity():
    with pytest.raises(DegreeError):
        transfer_sign(LEFT_COMB, [1, 1])
