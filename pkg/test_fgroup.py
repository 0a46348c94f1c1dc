# test_fgroup.py
"""유한군 검증 / 켤레류 데이터 / ♠ ♣ 테스트"""

from itertools import product

import pytest

from app.core.exceptions import GroupValidationError, UnknownPresetError
from app.utils.fgroup import (
    PRESET_NAMES,
    FiniteGroup,
    clubsuit,
    conjugacy,
    preset,
    spadesuit,
    spadesuit_preimages,
)

# 항등원과 역원은 있지만 결합법칙이 깨지는 위수 5 루프
NON_ASSOCIATIVE_LOOP = [
    [0, 1, 2, 3, 4],
    [1, 0, 3, 4, 2],
    [2, 4, 0, 1, 3],
    [3, 2, 4, 0, 1],
    [4, 3, 1, 2, 0],
]


# ==================== 곱셈표 검증 ====================

def test_from_table_accepts_cyclic_group():
    group = FiniteGroup.from_table([[0, 1, 2], [1, 2, 0], [2, 0, 1]], "C3")
    assert group.order == 3
    assert group.identity == 0
    assert group.inverse == (0, 2, 1)
    assert group.is_abelian


def test_identity_need_not_be_zero():
    group = FiniteGroup.from_table([[1, 0], [0, 1]])
    assert group.identity == 1
    assert group.nonidentity == (0,)


def test_non_associative_table_reports_triple():
    with pytest.raises(GroupValidationError) as info:
        FiniteGroup.from_table(NON_ASSOCIATIVE_LOOP)
    a, b, c = info.value.witness
    t = NON_ASSOCIATIVE_LOOP
    assert t[t[a][b]][c] != t[a][t[b][c]]


def test_missing_identity():
    with pytest.raises(GroupValidationError):
        FiniteGroup.from_table([[0, 0], [0, 0]])


def test_missing_inverse_reports_element():
    with pytest.raises(GroupValidationError) as info:
        FiniteGroup.from_table([[0, 1], [1, 1]])
    assert info.value.witness == (1,)


def test_out_of_range_entry():
    with pytest.raises(GroupValidationError) as info:
        FiniteGroup.from_table([[0, 5], [5, 0]])
    assert info.value.witness == (0, 1)


@pytest.mark.parametrize("table", [[], [[0, 1]], [[0, 1], [1]]])
def test_non_square_tables(table):
    with pytest.raises(GroupValidationError):
        FiniteGroup.from_table(table)


# ==================== 프리셋 ====================

@pytest.mark.parametrize(
    "name, order, abelian, n_classes",
    [("Z2", 2, True, 2), ("Z3", 3, True, 3), ("Z4", 4, True, 4), ("Z2xZ2", 4, True, 4),
     ("S3", 6, False, 3), ("D4", 8, False, 5), ("Q8", 8, False, 5)],
)
def test_presets(name, order, abelian, n_classes):
    group = preset(name)
    assert group.order == order
    assert group.is_abelian is abelian
    assert len(conjugacy(group).reps) == n_classes
    assert group.identity == 0


def test_preset_names_all_resolve():
    for name in PRESET_NAMES:
        assert preset(name).name == name


def test_cyclic_and_product_presets():
    assert preset("Zn(5)").order == 5
    assert preset("Z7").order == 7
    group = preset("product(Z2,Z3)")
    assert group.order == 6
    assert group.is_abelian


def test_klein_group_uses_xor():
    group = preset("Z2xZ2")
    assert group.mul(1, 2) == 3
    assert all(group.mul(g, g) == 0 for g in group.elements)


def test_unknown_preset():
    with pytest.raises(UnknownPresetError):
        preset("A5")


# ==================== 켤레류 ====================

def test_s3_classes(s3_data):
    sizes = [len(s3_data.classes[x]) for x in s3_data.reps]
    assert sorted(sizes) == [1, 2, 3]
    assert sum(sizes) == 6


def test_class_equation_and_first_member(s3_data):
    G = s3_data.group
    for x in s3_data.reps:
        assert s3_data.classes[x][0] == x
        assert s3_data.coset_reps[x][0] == G.identity
        assert len(s3_data.classes[x]) * len(s3_data.centralizers[x]) == G.order
        for i, gamma in enumerate(s3_data.coset_reps[x]):
            assert s3_data.classes[x][i] == G.conjugate(gamma, x)


def test_coset_index_decomposes_every_element(s3_data):
    G = s3_data.group
    for x in s3_data.reps:
        gammas = s3_data.coset_reps[x]
        for g in G.elements:
            i, c = s3_data.coset_index[x][g]
            assert s3_data.in_centralizer(x, c)
            assert G.mul(c, gammas[i]) == g


def test_reverse_lookup(s3_data):
    for g in s3_data.group.elements:
        x, i = s3_data.class_of[g], s3_data.position[g]
        assert s3_data.classes[x][i] == g


# ==================== ♠ / ♣ ====================

def test_spadesuit_preimages_invert_spadesuit(s3_data):
    for x in s3_data.reps:
        k = s3_data.n_cosets(x)
        cent = s3_data.centralizers[x]
        for i in range(k):
            for hs in product(cent, repeat=2):
                preimages = list(spadesuit_preimages(s3_data, x, i, hs))
                assert len(preimages) == k ** 2
                for gs, final in preimages:
                    assert spadesuit(s3_data, x, i, gs) == (hs, final)


def test_spadesuit_trace_starts_at_index(s3_data):
    x = s3_data.reps[1]
    hs, final, trace = spadesuit(s3_data, x, 1, (1, 2), with_trace=True)
    assert trace[0] == 1
    assert trace[-1] == final
    assert len(trace) == 3
    assert len(hs) == 2


def test_spadesuit_indices_are_zero_based(s3_data):
    group = s3_data.group
    for x in s3_data.reps:
        assert s3_data.coset_reps[x][0] == group.identity
        assert spadesuit(s3_data, x, 0, ()) == ((), 0)
        last = s3_data.n_cosets(x) - 1
        assert spadesuit(s3_data, x, last, ()) == ((), last)
        assert list(spadesuit_preimages(s3_data, x, 0, ())) == [((), 0)]


def test_clubsuit_layout(s3):
    out = clubsuit(s3, 1, 2, (3,), (4, 5))
    middle = s3.mul(s3.inv(s3.mul(3, 2)), 1)
    assert out == (4, 5, middle, 3)
