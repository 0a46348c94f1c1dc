# test_transfer.py
"""전이된 A∞ 연산 m̂_n / α·β 국소 연산 / m̂_2 여섯 경우 대조 테스트"""

import pytest

from app.core.exceptions import DegreeError, TateEngineError
from app.services.compute_service import compute_service
from app.services.verify_service import PRINTED_POLICY_WARNING, verify_service
from app.utils.fgroup import preset
from app.utils.oracles import MhatOracle, m2_case
from app.utils.scalars import QQ
from app.utils.stasheff import stasheff_relation
from app.utils.transfer import LocalOp
from app.utils.trees import PlanarTree, enumerate_trees


# ==================== m̂_1 / m̂_2 ====================

def test_mhat1_is_decomposed_differential(s3_ctx):
    target = s3_ctx.decomposition.target
    for m in (-2, -1, 0, 1):
        for key in target.basis(m):
            e = target.basis_element(key, m)
            assert s3_ctx.transfer.mhat(1, [e]) == target.decomposed_diff(e)


def test_mhat2_in_degree_zero_multiplies_class_sums(s3_ctx):
    target = s3_ctx.decomposition.target
    transposition, three_cycle = s3_ctx.decomposition.cd.reps[1], s3_ctx.decomposition.cd.reps[2]
    t = target.basis_element((transposition,), 0)
    out = s3_ctx.transfer.mhat(2, [t, t])
    # (전치 합)^2 = 3·e + 3·(3-순환 합)
    assert out.terms == {(0,): 3, (three_cycle,): 3}


@pytest.mark.parametrize(
    "n, m, case",
    [(0, 0, 1), (2, 1, 1), (-1, -1, 2), (0, -1, 3), (1, -3, 3), (1, -1, 4), (3, -2, 4), (-1, 0, 5), (-3, 1, 5), (-1, 1, 6), (-2, 3, 6)],
)
def test_m2_case_numbers(n, m, case):
    assert m2_case(n, m) == case


def test_oracle_matches_engine_on_all_cases(s3, qq):
    report = verify_service.check_m2_theorem(s3, qq, (-1, 1))
    assert report.passed, report.failures[:3]
    assert "cases covered: [1, 2, 3, 4, 5, 6]" in report.notes


def test_oracle_matches_engine_on_dihedral_group(qq):
    report = verify_service.check_m2_theorem(preset("D4"), qq, (-1, 0))
    assert report.passed, report.failures[:3]


def test_oracle_linear_extension(s3_ctx, qq):
    oracle = MhatOracle(s3_ctx.decomposition.cd, qq)
    target = s3_ctx.decomposition.target
    a = target.element(1, {(0, 1): 1, (0, 2): "1/2"})
    b = target.element(-1, {(1,): 2})
    assert oracle.m2(a, b) == s3_ctx.transfer.mhat(2, [a, b])


# ==================== 나무 합 ====================

def test_mhat_is_sum_of_tree_terms(s3_ctx):
    target = s3_ctx.decomposition.target
    inputs = [target.basis_element((0, 1), 1), target.basis_element((1,), -1), target.basis_element((0, 2), 1)]
    terms = s3_ctx.transfer.tree_terms(3, inputs)
    assert list(terms) == [t.encode() for t in enumerate_trees(3)]
    total = target.zero(1 - 1 + 1 + 2 - 3)
    for value in terms.values():
        total = total + value
    assert total == s3_ctx.transfer.mhat(3, inputs)


def test_mhat_input_validation(s3_ctx):
    target = s3_ctx.decomposition.target
    e = target.basis_element((0,), 0)
    with pytest.raises(DegreeError):
        s3_ctx.transfer.mhat(2, [e])
    with pytest.raises(DegreeError):
        s3_ctx.transfer.mhat(0, [])
    with pytest.raises(DegreeError):
        s3_ctx.transfer.mhat(1, [s3_ctx.complex.basis_element((0,), 0)])


@pytest.mark.parametrize("group_name, window, levels", [("Z2", (-1, 1), [1, 2, 3]), ("S3", (-1, 0), [1, 2, 3])])
def test_transferred_stasheff(group_name, window, levels, qq):
    report = verify_service.check_transferred(preset(group_name), qq, window, levels=levels)
    assert report.passed, report.failures[:3]
    assert "policy=koszul" in report.notes


def test_transferred_stasheff_level_four_sampled(qq, small_exhaustive_limit):
    report = verify_service.check_transferred(preset("Z3"), qq, (-1, 1), levels=[4], samples=15)
    assert report.passed, report.failures[:3]
    assert report.cases == 15


def test_transferred_stasheff_level_four_on_s3_inputs(s3_ctx):
    # m̂_1 이 첫 입력을 0 차로 올리면 (.,((.,.),.)) 항의 부호가 걸림
    target = s3_ctx.decomposition.target
    inputs = [
        target.basis_element((3,), -1),
        target.basis_element((3,), 0),
        target.basis_element((1, 1), 1),
        target.basis_element((1, 1), 1),
    ]
    assert s3_ctx.transfer.mhat(1, inputs[:1]) == target.basis_element((3,), 0).scale(3)
    value = stasheff_relation(s3_ctx.transfer.mhat, inputs, 4)
    assert value.is_zero(), repr(value)


def test_transferred_stasheff_level_four_sampled_on_s3(qq, small_exhaustive_limit):
    report = verify_service.check_transferred(preset("S3"), qq, (-1, 1), levels=[4], samples=25)
    assert report.passed, report.failures[:3]
    assert report.cases == 25


# ==================== α / β ====================

def test_local_op_parse_and_encode():
    op = LocalOp.parse("α(1+, 0-, +)")
    assert op.root == "alpha"
    assert op.ends == ((True, "+"), (False, "-"))
    assert op.encode() == "alpha(1+,0-,+)"
    assert LocalOp.parse("beta(1-,1+,1-,-)").encode() == "beta(1-,1+,1-,-)"


@pytest.mark.parametrize("text", ["gamma(1+,1+,+)", "alpha(1+,+)", "alpha(2+,1+,+)", "alpha(1+,1+,*)"])
def test_local_op_rejects_bad_text(text):
    with pytest.raises(TateEngineError):
        LocalOp.parse(text)


def test_local_op_degree_mismatch(s3_ctx):
    target = s3_ctx.decomposition.target
    e = target.basis_element((0,), 0)
    with pytest.raises(DegreeError):
        s3_ctx.transfer.local_op("alpha(1-,1+,+)", [e, e])


def test_flowchart_steps(s3_ctx):
    tree = PlanarTree.parse("((.,.),.)")
    steps = s3_ctx.transfer.flowchart(tree, [1, -1, 1])
    assert steps == ["beta(1+,1-,+)", "alpha(0-,1+,+)"]


def test_flowchart_steps_for_three_vertices():
    tree = PlanarTree.parse("(.,((.,.),.))")
    steps = compute_service.context(preset("S3"), QQ).transfer.flowchart(tree, [1, 1, 1, 1])
    assert steps == ["beta(1+,1+,+)", "beta(0+,1+,+)", "alpha(1+,0+,+)"]


def test_flowchart_check(z2, qq):
    report = verify_service.check_flowchart(z2, qq, (-1, 1))
    assert report.passed, report.failures[:3]


def test_flowchart_check_covers_four_leaves_on_s3(s3, qq, small_exhaustive_limit):
    report = verify_service.check_flowchart(s3, qq, (-1, 1), samples=8, arities=[4])
    assert report.passed, report.failures[:3]
    # 표본 8 개 × 나무 10 개 × (steps_shape, local_ops)
    assert report.cases == 160
    assert report.exhaustive is False


def test_local_ops_reproduce_tree_values(s3_ctx):
    target = s3_ctx.decomposition.target
    inputs = [target.basis_element((1,), -1), target.basis_element((0, 1), 1), target.basis_element((3,), -1)]
    for tree in enumerate_trees(3):
        assert s3_ctx.transfer.eval_tree_by_local_ops(tree, inputs) == s3_ctx.transfer.eval_tree(tree, inputs)


def test_policy_changes_context(s3, qq):
    koszul = compute_service.context(s3, qq, "koszul")
    printed = compute_service.context(s3, qq, "printed")
    assert koszul is not printed
    assert printed.transfer.policy.value == "printed"
    assert compute_service.context(s3, qq, "koszul") is koszul


def test_printed_policy_breaks_transferred_stasheff_on_s3(qq, small_exhaustive_limit):
    report = verify_service.check_transferred(preset("S3"), qq, (-1, 1), levels=[3], samples=60, policy="printed")
    assert not report.passed
    assert report.failures[0].identity == "stasheff_n3"
    assert "policy=printed" in report.notes
    assert PRINTED_POLICY_WARNING in report.notes


def test_koszul_policy_has_no_warning(qq):
    report = verify_service.check_transferred(preset("Z2"), qq, (0, 0), levels=[2])
    assert report.passed
    assert PRINTED_POLICY_WARNING not in report.notes
