# test_hochschild.py
"""Tate-Hochschild 복합체 𝒟* 의 기저와 미분 테스트"""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from app.core.exceptions import DegreeError
from app.services.verify_service import CorruptedLastFaceComplex, verify_service
from app.utils.hochschild import GroupAlgebraElement, TateComplex
from app.utils.scalars import QQ, FieldSpec
from app.utils.fgroup import preset


def test_basis_sizes(s3, qq):
    D = TateComplex(s3, qq)
    assert D.basis_size(0) == 6
    assert D.basis_size(2) == 6 * 25
    assert D.basis_size(-1) == 6
    assert D.basis_size(-3) == 6 * 25
    assert len(list(D.basis(1))) == D.basis_size(1)


def test_element_drops_identity_slots_and_validates(s3, qq):
    D = TateComplex(s3, qq)
    e = D.element(1, {(2, 0): 1, (2, 1): "1/2"})
    assert e.terms == {(2, 1): QQ.coerce("1/2")}
    with pytest.raises(DegreeError):
        D.element(1, {(2,): 1})
    with pytest.raises(DegreeError):
        D.element(-1, {(9,): 1})


@pytest.mark.parametrize("name, window", [("Z2", range(-4, 4)), ("Z3", range(-3, 3)), ("S3", range(-2, 2))])
def test_dprime_squares_to_zero(name, window):
    D = TateComplex(preset(name), QQ)
    for m in window:
        for key in D.basis(m):
            f = D.basis_element(key, m)
            assert D.dprime(D.dprime(f)).is_zero(), (m, key)


def test_dprime_squares_to_zero_in_characteristic_two(z4, f2):
    D = TateComplex(z4, f2)
    for m in (-2, -1, 0, 1):
        for key in D.basis(m):
            assert D.dprime(D.dprime(D.basis_element(key, m))).is_zero()


def test_degree_zero_kernel_is_the_centre(s3, qq):
    D = TateComplex(s3, qq)
    transpositions = [g for g in s3.elements if g != s3.identity and s3.mul(g, g) == s3.identity]
    class_sum = D.element(0, {(g,): 1 for g in transpositions})
    assert D.dprime(class_sum).is_zero()
    assert not D.dprime(D.basis_element((transpositions[0],), 0)).is_zero()
    center = GroupAlgebraElement(qq, {g: 1 for g in transpositions})
    assert center.is_central(s3)
    assert center.as_tate() == class_sum


def test_trace_sums_conjugates(s3, qq):
    D = TateComplex(s3, qq)
    t = next(g for g in s3.elements if g != s3.identity and s3.mul(g, g) == s3.identity)
    out = D.dprime(D.basis_element((t,), -1))
    assert out.degree == 0
    assert {key[0] for key in out.terms} == {g for g in s3.elements if g != 0 and s3.mul(g, g) == 0}
    assert all(c == 2 for c in out.terms.values())


def test_trace_of_identity_is_group_order(z3, qq):
    D = TateComplex(z3, qq)
    out = D.dprime(D.basis_element((0,), -1))
    assert out.terms == {(0,): 3}


def test_lowest_chain_differential(z3, qq):
    # ∂_1(g_0, g_1) = g_0 g_1 - g_1 g_0 = 0 (아벨군)
    D = TateComplex(z3, qq)
    assert D.dprime(D.basis_element((1, 2), -2)).is_zero()


def test_value_at_reads_cochain(s3, qq):
    D = TateComplex(s3, qq)
    f = D.element(1, {(0, 1): 2, (3, 1): 1, (3, 2): 5})
    assert f.value_at((1,)) == GroupAlgebraElement(qq, {0: 2, 3: 1})
    with pytest.raises(DegreeError):
        D.basis_element((0, 1), -2).value_at((1,))


def test_mixed_fields_rejected(z3):
    D = TateComplex(z3, QQ)
    with pytest.raises(ValueError):
        D.dprime(TateComplex(z3, FieldSpec(3)).basis_element((0,), 0))


def test_corrupted_last_face_breaks_complex(z3, qq):
    D = CorruptedLastFaceComplex(z3, qq)
    f = D.basis_element((1, 2), -2)
    assert not D.dprime(D.dprime(f)).is_zero()


@pytest.mark.parametrize("window", [(-2, -1), (-3, 0)])
def test_check_complex_detects_corruption(z3, qq, window):
    assert verify_service.check_complex(z3, qq, window).passed
    assert not verify_service.check_complex(z3, qq, window, corrupted=True).passed


@settings(max_examples=25, deadline=None)
@given(
    coeffs=st.lists(st.integers(-3, 3), min_size=6, max_size=6),
    degree=st.sampled_from([-3, -2, 1]),
)
def test_dprime_squared_on_linear_combinations(coeffs, degree):
    D = TateComplex(preset("Z3"), QQ)
    keys = list(D.basis(degree))[:6]
    f = D.element(degree, dict(zip(keys, coeffs)))
    assert D.dprime(D.dprime(f)).is_zero()
