# test_abelian.py
"""아벨군 닫힌 형태와 ℤ2 / ℤ4 / ℤ2×ℤ2 손계산 표 테스트"""

import pytest

from app.core.exceptions import DegreeError, TateEngineError, UnsupportedGroupError
from app.services.verify_service import verify_service
from app.utils.abelian import (
    KNOWN_DISCREPANCIES,
    AbelianClosedForms,
    AbelianCochain,
    ci_map,
    di_map,
    printed_indexed_mhat1,
    printed_indexed_mhat2,
    printed_indexed_mhat3_special,
    printed_z2_mhat1,
    printed_z2_mhat2,
    printed_z2_mhat3,
)
from app.utils.fgroup import preset
from app.utils.scalars import QQ, FieldSpec
from app.utils.stasheff import CheckReport


def test_nonabelian_group_rejected(s3, qq):
    with pytest.raises(UnsupportedGroupError):
        AbelianClosedForms(s3, qq)


# ==================== m̂′ 닫힌 형태 ====================

def test_z2_mhat1_vanishes_over_f2(z2, f2):
    forms = AbelianClosedForms(z2, f2)
    for d in range(-4, 5):
        for key in forms.basis(d):
            assert forms.mhat1_closed(forms.basis_element(key, d)).is_zero()


@pytest.mark.parametrize("degree", range(-5, 5))
def test_z2_mhat1_matches_printed_table(z2, qq, degree):
    forms = AbelianClosedForms(z2, qq)
    width = degree if degree >= 0 else -degree - 1
    out = forms.mhat1_closed(forms.basis_element((1,) * width, degree))
    out_width = degree + 1 if degree + 1 >= 0 else -degree - 2
    assert out.coefficient((1,) * out_width) == printed_z2_mhat1(degree)


def test_tau_is_group_order(z4, qq):
    forms = AbelianClosedForms(z4, qq)
    assert forms.mhat1_closed(forms.basis_element((), -1)).terms == {(): 4}


def test_closed_mhat1_squares_to_zero(z4, qq):
    forms = AbelianClosedForms(z4, qq)
    for d in range(-3, 3):
        for key in forms.basis(d):
            e = forms.basis_element(key, d)
            assert forms.mhat1_closed(forms.mhat1_closed(e)).is_zero()


def test_mhat2_concatenates_cochains(z3, qq):
    forms = AbelianClosedForms(z3, qq)
    out = forms.mhat2_closed(forms.basis_element((1,), 1), forms.basis_element((2, 2), 2))
    assert out.degree == 3
    assert out.terms == {(1, 2, 2): 1}


def test_mhat2_of_chains_in_z2(z2, qq):
    forms = AbelianClosedForms(z2, qq)
    out = forms.mhat2_closed(forms.basis_element((), -1), forms.basis_element((), -1))
    assert out.terms == {(1,): 1}


def test_mhat3_chain_cochain_chain_in_z2(z2, qq):
    forms = AbelianClosedForms(z2, qq)
    out = forms.mhat3_closed(forms.basis_element((), -1), forms.basis_element((1,), 1), forms.basis_element((), -1))
    assert out.degree == -2
    assert out.terms == {(1,): -1}


def test_mhat_beyond_three_vanishes(z3, qq):
    forms = AbelianClosedForms(z3, qq)
    e = forms.basis_element((1,), 1)
    out = forms.mhat_closed(4, [e, e, e, e])
    assert out.is_zero() and out.degree == 2
    with pytest.raises(DegreeError):
        forms.mhat_closed(2, [e])


def test_tensor_structure_multiplies_labels(z3, qq):
    forms = AbelianClosedForms(z3, qq)
    label, value = forms.tensor_structure(2, [(1, forms.basis_element((1,), 1)), (2, forms.basis_element((2,), 1))])
    assert label == 0
    assert value.terms == {(1, 2): 1}
    decomposed = forms.to_decomposed(label, value)
    assert decomposed.terms == {(0, 1, 2): 1}
    assert forms.from_decomposed(decomposed)[0] == value


@pytest.mark.parametrize("group_name", ["Z2", "Z3"])
def test_engine_agrees_with_closed_forms(group_name, qq, small_exhaustive_limit):
    report = verify_service.check_abelian(preset(group_name), qq, (-1, 1), samples=20)
    assert report.passed, report.failures[:3]


def test_abelian_check_rejects_nonabelian(s3, qq):
    with pytest.raises(UnsupportedGroupError):
        verify_service.check_abelian(s3, qq)


# ==================== 손계산 표 ====================

def test_ci_map_cases():
    assert ci_map("Z4", 1, (1,)) == [(2, 3), (3, 2)]
    assert ci_map("Z4", 1, (2,)) == [(3, 3)]
    assert ci_map("Z4", 2, (1, 3)) == [(1, 1, 2), (1, 2, 1)]
    assert ci_map("Z2xZ2", 2, (1, 3)) == [(1, 1, 2), (1, 2, 1)]
    assert ci_map("Z2xZ2", 1, (2, 2)) == [(1, 3, 2), (3, 1, 2)]


def test_ci_map_validation():
    with pytest.raises(TateEngineError):
        ci_map("Z3", 1, (1,))
    with pytest.raises(TateEngineError):
        ci_map("Z4", 2, (1,))
    with pytest.raises(TateEngineError):
        ci_map("Z4", 1, (4,))


def test_di_map():
    assert di_map(1, (1, 2)) == (3,)
    assert di_map(1, (2, 2)) is None
    assert di_map(2, (1, 1, 3)) == (1, 2)


def test_indexed_m1_matches_klein_group(qq):
    forms = AbelianClosedForms(preset("Z2xZ2"), qq)
    for d in (-3, -2, -1, 0, 1, 2):
        for key in forms.basis(d):
            out = forms.mhat1_closed(forms.basis_element(key, d))
            assert out.terms == printed_indexed_mhat1("Z2xZ2", key, d), (d, key)


def test_z4_printed_ci_misses_one_term(z4, qq):
    forms = AbelianClosedForms(z4, qq)
    out = forms.mhat1_closed(forms.basis_element((2,), 1))
    printed = printed_indexed_mhat1("Z4", (2,), 1)
    assert set(out.terms) - set(printed) == {(1, 1)}
    assert out.terms[(1, 1)] == -1
    assert printed_indexed_mhat1("Z4", (2,), 1, corrected=True) == out.terms


class _DroppedTermForms(AbelianClosedForms):
    """1 차 m̂′_1 에서 (3,3) 항을 빼먹는 닫힌 형태"""

    def mhat1_closed(self, e: AbelianCochain) -> AbelianCochain:
        out = super().mhat1_closed(e)
        if e.degree != 1:
            return out
        return AbelianCochain(self.spec, out.degree, {k: c for k, c in out.terms.items() if k != (3, 3)})


def test_z4_discrepancy_requires_exact_missing_terms(z4, qq):
    report = CheckReport(check="abelian", group="Z4", field="Q", window=(1, 1))
    verify_service._compare_indexed(report, AbelianClosedForms(z4, qq), [1])
    assert report.passed
    assert any("z4-ci-j2" in note for note in report.notes)

    broken = CheckReport(check="abelian", group="Z4", field="Q", window=(1, 1))
    verify_service._compare_indexed(broken, _DroppedTermForms(z4, qq), [1])
    assert not broken.passed
    assert not any("z4-ci-j2" in note for note in broken.notes)
    assert {"degree": 1, "key": [2]} in [f.witness for f in broken.failures]


@pytest.mark.parametrize("group_name", ["Z4", "Z2xZ2"])
def test_indexed_m2_printed_table_matches_engine(group_name, qq):
    forms = AbelianClosedForms(preset(group_name), qq)
    degrees = (-3, -2, -1, 0, 1, 2)
    for n in degrees:
        for m in degrees:
            for p in forms.basis(n):
                for q in forms.basis(m):
                    out = forms.mhat2_closed(forms.basis_element(p, n), forms.basis_element(q, m))
                    assert out.terms == printed_indexed_mhat2(group_name, p, n, q, m), (n, m, p, q)


def test_indexed_m2_chain_case_sums_three_middle_slots(z4, qq):
    # ℤ2 와 달리 I_3 의 세 값이 모두 살아남는다
    printed = printed_indexed_mhat2("Z4", (1,), -2, (3,), -2)
    assert printed == {(3, 1, 1): 1, (3, 2, 1): 1, (3, 3, 1): 1}
    forms = AbelianClosedForms(z4, qq)
    out = forms.mhat2_closed(forms.basis_element((1,), -2), forms.basis_element((3,), -2))
    assert out.terms == printed
    assert printed_indexed_mhat2("Z4", (1, 2), 2, (2,), -2) == {(): 1}
    assert printed_indexed_mhat2("Z4", (1, 2), 2, (1,), -2) == {}
    with pytest.raises(TateEngineError):
        printed_indexed_mhat2("Z3", (), 0, (), 0)


def test_indexed_m3_special_forms(z4, qq):
    forms = AbelianClosedForms(z4, qq)
    # r + 2 = m + n: (λ^{(1)}, g_{()}, μ^{(3)}) → -1
    assert printed_indexed_mhat3_special("Z4", "r+2=m+n", (1,), (), (3,)) == {(): -1}
    out = forms.mhat3_closed(forms.basis_element((1,), 1), forms.basis_element((), -1), forms.basis_element((3,), 1))
    assert out.terms == {(): -1}
    assert printed_indexed_mhat3_special("Z4", "m=1", (1,), (2,), (3,)) == {(3, 3, 2): 1}
    with pytest.raises(DegreeError):
        printed_indexed_mhat3_special("Z4", "r+2=m+n", (1, 1), (), (3,))


def test_printed_z2_tables():
    assert printed_z2_mhat1(1) == 2
    assert printed_z2_mhat1(2) == 0
    assert printed_z2_mhat1(-1) == 2
    assert printed_z2_mhat1(-2) == 0
    assert printed_z2_mhat2(-1, -1) == (-2, 3)
    assert printed_z2_mhat2(1, 2) == (3, 1)
    assert printed_z2_mhat3((1, -1, 1), 2, 3, 5, QQ) == (0, -30)
    assert printed_z2_mhat3((-1, 1, -1), 2, 3, 5, QQ) == (-2, -60)
    assert printed_z2_mhat3((1, 1, 1), 2, 3, 5, QQ) == (2, 0)


def test_known_discrepancies_are_reported(z2, z4, qq, small_exhaustive_limit):
    assert {d.key for d in KNOWN_DISCREPANCIES} == {"z2-m2-case2", "z2-m3-case2", "z4-ci-j2"}
    z2_report = verify_service.check_abelian(z2, qq, (-1, 1), samples=10)
    joined = " ".join(z2_report.notes)
    assert "z2-m2-case2" in joined and "z2-m3-case2" in joined
    assert z2_report.passed
    z4_report = verify_service.check_abelian(z4, qq, (-1, 1), samples=10)
    assert any("z4-ci-j2" in note for note in z4_report.notes)
    assert z4_report.passed, z4_report.failures[:3]


def test_printed_tables_agree_in_characteristic_two(z2):
    # ℤ2 표의 3λμ 는 F_2 에서 λμ 와 같다
    f2 = FieldSpec(2)
    forms = AbelianClosedForms(z2, f2)
    out = forms.mhat2_closed(forms.basis_element((), -1), forms.basis_element((), -1))
    _, factor = printed_z2_mhat2(-1, -1)
    assert out.coefficient((1,)) == f2.coerce(factor)
