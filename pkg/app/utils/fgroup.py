# app/utils/fgroup.py
"""
유한군 연산과 켤레류 / 중심화군 / 잉여류 조합론

- 원소는 0..order-1 정수 인덱스. 프리셋은 항상 0 이 항등원이다.
- 잉여류 대표 γ 는 0 번부터 세며 γ_0 = 항등원, 따라서 x_0 = x.
- coset_index[x][g] = (i, c) 는 g = c·γ_i, c ∈ C_G(x) 를 뜻한다.
"""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import permutations, product
from typing import Dict, FrozenSet, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from app.core.exceptions import GroupValidationError, UnknownPresetError

logger = logging.getLogger(__name__)

MAX_GROUP_ORDER = 32


@dataclass(frozen=True)
class FiniteGroup:
    """곱셈표로 주어진 유한군 (row·col = product)"""

    name: str
    table: Tuple[Tuple[int, ...], ...]
    identity: int
    inverse: Tuple[int, ...]

    @property
    def order(self) -> int:
        return len(self.table)

    @property
    def elements(self) -> range:
        return range(len(self.table))

    @property
    def nonidentity(self) -> Tuple[int, ...]:
        return tuple(g for g in self.elements if g != self.identity)

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self.inverse[a]

    def prod(self, seq: Sequence[int]) -> int:
        """왼쪽부터 곱한 g_1⋯g_n (빈 곱은 항등원)"""
        acc = self.identity
        t = self.table
        for g in seq:
            acc = t[acc][g]
        return acc

    def conjugate(self, g: int, x: int) -> int:
        """g⁻¹·x·g"""
        return self.table[self.table[self.inverse[g]][x]][g]

    @property
    def is_abelian(self) -> bool:
        t = self.table
        return all(t[a][b] == t[b][a] for a in self.elements for b in self.elements)

    def to_dict(self) -> Dict[str, object]:
        return {"name": self.name, "order": self.order, "table": [list(row) for row in self.table]}

    # ==================== 생성 / 검증 ====================

    @classmethod
    def from_table(cls, table: Sequence[Sequence[int]], name: str = "G") -> "FiniteGroup":
        """
        곱셈표 검증 후 군 생성

        검증 순서: 정사각형 / 범위 → 항등원 → 역원 → 결합법칙.
        실패하면 문제되는 원소나 삼중쌍을 담은 GroupValidationError.
        """
        try:
            arr = np.asarray(table, dtype=np.int64)
        except (TypeError, ValueError) as exc:
            raise GroupValidationError(f"곱셈표를 정수 배열로 읽을 수 없습니다: {exc}") from exc

        if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] == 0:
            raise GroupValidationError(f"곱셈표는 비어 있지 않은 정사각 행렬이어야 합니다: shape={arr.shape}")
        n = arr.shape[0]
        if n > MAX_GROUP_ORDER:
            raise GroupValidationError(f"군의 위수 {n} 가 상한 {MAX_GROUP_ORDER} 를 넘습니다")
        bad = np.argwhere((arr < 0) | (arr >= n))
        if bad.size:
            a, b = (int(v) for v in bad[0])
            raise GroupValidationError(f"범위를 벗어난 곱 {a}·{b} = {int(arr[a, b])}", witness=(a, b))

        idx = np.arange(n)
        unit_mask = np.all(arr == idx[None, :], axis=1) & np.all(arr == idx[:, None], axis=0)
        units = np.flatnonzero(unit_mask)
        if units.size == 0:
            raise GroupValidationError("항등원이 없습니다")
        e = int(units[0])

        inverse: List[int] = []
        for g in range(n):
            cands = np.flatnonzero((arr[g, :] == e) & (arr[:, g] == e))
            if cands.size == 0:
                raise GroupValidationError(f"원소 {g} 의 역원이 없습니다", witness=(g,))
            inverse.append(int(cands[0]))

        left = arr[arr[:, :, None], idx[None, None, :]]  # (ab)c
        right = arr[idx[:, None, None], arr[None, :, :]]  # a(bc)
        mismatch = np.argwhere(left != right)
        if mismatch.size:
            a, b, c = (int(v) for v in mismatch[0])
            raise GroupValidationError(f"결합법칙 실패: ({a}·{b})·{c} != {a}·({b}·{c})", witness=(a, b, c))

        return cls(name=name, table=tuple(tuple(int(v) for v in row) for row in arr), identity=e, inverse=tuple(inverse))


# ==================== 프리셋 ====================


def _cyclic_table(n: int) -> List[List[int]]:
    return [[(a + b) % n for b in range(n)] for a in range(n)]


def _symmetric3_table() -> List[List[int]]:
    perms = list(permutations(range(3)))
    index = {p: i for i, p in enumerate(perms)}
    return [[index[tuple(p[q[k]] for k in range(3))] for q in perms] for p in perms]


def _dihedral4_table() -> List[List[int]]:
    # r^k s^e ↔ k + 4e
    def mul(a: int, b: int) -> int:
        ka, ea = a % 4, a // 4
        kb, eb = b % 4, b // 4
        k = (ka + (kb if ea == 0 else -kb)) % 4
        return k + 4 * ((ea + eb) % 2)

    return [[mul(a, b) for b in range(8)] for a in range(8)]


# 단위 1,i,j,k 의 곱: (부호, 단위)
_QUAT = (
    ((1, 0), (1, 1), (1, 2), (1, 3)),
    ((1, 1), (-1, 0), (1, 3), (-1, 2)),
    ((1, 2), (-1, 3), (-1, 0), (1, 1)),
    ((1, 3), (1, 2), (-1, 1), (-1, 0)),
)


def _quaternion_table() -> List[List[int]]:
    # ±u ↔ u + 4·[부호가 음]
    def mul(a: int, b: int) -> int:
        sa, ua = (-1 if a >= 4 else 1), a % 4
        sb, ub = (-1 if b >= 4 else 1), b % 4
        s, u = _QUAT[ua][ub]
        return u + (4 if s * sa * sb < 0 else 0)

    return [[mul(a, b) for b in range(8)] for a in range(8)]


def direct_product(a: FiniteGroup, b: FiniteGroup, name: Optional[str] = None) -> FiniteGroup:
    """(i, j) ↔ i·|B| + j"""
    nb = b.order
    table = [
        [a.mul(i1, i2) * nb + b.mul(j1, j2) for i2 in a.elements for j2 in b.elements]
        for i1 in a.elements
        for j1 in b.elements
    ]
    return FiniteGroup.from_table(table, name or f"{a.name}x{b.name}")


PRESET_NAMES = ("Z2", "Z3", "Z4", "Z2xZ2", "S3", "D4", "Q8")

_CYCLIC = re.compile(r"^Z(?:n\()?(\d+)\)?$")
_PRODUCT = re.compile(r"^product\((.+),(.+)\)$")


@lru_cache(maxsize=64)
def preset(name: str) -> FiniteGroup:
    """
    이름으로 프리셋 군 생성

    Z2, Z3, Z4, Zn(n) / Z<n>, Z2xZ2 (g1g2 = g3 인 XOR 표), S3, D4, Q8,
    product(A,B) 를 지원한다.
    """
    label = name.strip().replace(" ", "")
    if label in {"Z2xZ2", "V4", "Z2*Z2"}:
        return FiniteGroup.from_table([[a ^ b for b in range(4)] for a in range(4)], "Z2xZ2")
    if label == "S3":
        return FiniteGroup.from_table(_symmetric3_table(), "S3")
    if label == "D4":
        return FiniteGroup.from_table(_dihedral4_table(), "D4")
    if label == "Q8":
        return FiniteGroup.from_table(_quaternion_table(), "Q8")
    match = _CYCLIC.match(label)
    if match:
        n = int(match.group(1))
        if not 1 <= n <= MAX_GROUP_ORDER:
            raise UnknownPresetError(f"순환군 위수는 1..{MAX_GROUP_ORDER} 이어야 합니다: {n}")
        return FiniteGroup.from_table(_cyclic_table(n), f"Z{n}")
    match = _PRODUCT.match(label)
    if match:
        left, right = preset(match.group(1)), preset(match.group(2))
        return direct_product(left, right, f"product({left.name},{right.name})")
    raise UnknownPresetError(f"알 수 없는 프리셋 군: {name!r}")


# ==================== 켤레류 데이터 ====================


@dataclass(frozen=True, eq=False)
class ConjugacyData:
    """
    켤레류 대표 X, 류 x_i = γ_i⁻¹ x γ_i, 중심화군, 오른쪽 잉여류 대표

    class_of[g] / position[g] 는 g = x_i 가 되는 (x, i) 를 바로 찾는 역색인이다.
    """

    group: FiniteGroup
    reps: Tuple[int, ...]
    classes: Dict[int, Tuple[int, ...]]
    centralizers: Dict[int, Tuple[int, ...]]
    coset_reps: Dict[int, Tuple[int, ...]]
    coset_index: Dict[int, Tuple[Tuple[int, int], ...]]
    class_of: Tuple[int, ...]
    position: Tuple[int, ...]
    _centralizer_sets: Dict[int, FrozenSet[int]] = field(repr=False, default_factory=dict)

    def n_cosets(self, x: int) -> int:
        return len(self.coset_reps[x])

    def in_centralizer(self, x: int, g: int) -> bool:
        return g in self._centralizer_sets[x]

    def centralizer_nonidentity(self, x: int) -> Tuple[int, ...]:
        e = self.group.identity
        return tuple(g for g in self.centralizers[x] if g != e)


@lru_cache(maxsize=64)
def conjugacy(group: FiniteGroup) -> ConjugacyData:
    """대표는 류에서 가장 작은 인덱스, 잉여류 대표는 γ_0 = 1 다음 인덱스 오름차순 스캔"""
    n = group.order
    e = group.identity
    class_of = [-1] * n
    position = [-1] * n
    reps: List[int] = []
    classes: Dict[int, Tuple[int, ...]] = {}
    centralizers: Dict[int, Tuple[int, ...]] = {}
    coset_reps: Dict[int, Tuple[int, ...]] = {}
    coset_index: Dict[int, Tuple[Tuple[int, int], ...]] = {}
    cent_sets: Dict[int, FrozenSet[int]] = {}

    for x in group.elements:
        if class_of[x] != -1:
            continue
        reps.append(x)
        cent = tuple(g for g in group.elements if group.mul(g, x) == group.mul(x, g))
        cent_set = frozenset(cent)

        gammas: List[int] = [e]
        index: List[Optional[Tuple[int, int]]] = [None] * n
        for c in cent:
            index[group.mul(c, e)] = (0, c)
        for g in group.elements:
            if index[g] is not None:
                continue
            i = len(gammas)
            gammas.append(g)
            for c in cent:
                index[group.mul(c, g)] = (i, c)

        members = tuple(group.conjugate(gamma, x) for gamma in gammas)
        for i, xi in enumerate(members):
            class_of[xi] = x
            position[xi] = i

        classes[x] = members
        centralizers[x] = cent
        cent_sets[x] = cent_set
        coset_reps[x] = tuple(gammas)
        coset_index[x] = tuple(index)  # type: ignore[arg-type]

    logger.debug("켤레류 계산: %s, %d 개 류", group.name, len(reps))
    return ConjugacyData(
        group=group,
        reps=tuple(reps),
        classes=classes,
        centralizers=centralizers,
        coset_reps=coset_reps,
        coset_index=coset_index,
        class_of=tuple(class_of),
        position=tuple(position),
        _centralizer_sets=cent_sets,
    )


# ==================== ♠ / ♣ ====================


def spadesuit(
    cd: ConjugacyData, x: int, i: int, seq: Sequence[int], *, with_trace: bool = False
):
    """
    ♠ 과정: γ_prev·g_t = h_t·γ_next 를 차례로 풀어 중심화군 원소열을 얻는다.

    Args:
        cd: 켤레류 데이터
        x: 류 대표
        i: 시작 잉여류 인덱스 (0-based)
        seq: g_1..g_n

    Returns:
        (h_1..h_n, 마지막 인덱스), with_trace 이면 지나간 인덱스 열 s^0..s^n 을 덧붙인다.

    잉여류 인덱스는 모두 0-based 이고 0 번 대표 γ_0 은 항등원이다 (손계산 표기의 γ_{1,x}).
    """
    group = cd.group
    gammas = cd.coset_reps[x]
    index = cd.coset_index[x]
    cur = i
    hs: List[int] = []
    trace = [i]
    for g in seq:
        j, c = index[group.mul(gammas[cur], g)]
        hs.append(c)
        cur = j
        trace.append(j)
    if with_trace:
        return tuple(hs), cur, tuple(trace)
    return tuple(hs), cur


def spadesuit_preimages(cd: ConjugacyData, x: int, i: int, hs: Sequence[int]) -> Iterator[Tuple[Tuple[int, ...], int]]:
    """
    ♠_{x,i} 의 역상 전체: 중간 인덱스 s^1..s^n 을 모두 골라 g_t = γ_{s^{t-1}}⁻¹ h_t γ_{s^t}.

    ♠_{x,i} 는 G^n 과 (C_G(x) × 인덱스)^n 사이의 전단사이므로 각 역상은 정확히 한 번 나온다.
    i 와 돌려주는 마지막 인덱스는 spadesuit 와 같은 0-based 잉여류 인덱스다.
    """
    group = cd.group
    gammas = cd.coset_reps[x]
    inv_gammas = [group.inv(g) for g in gammas]
    k = len(gammas)
    for path in product(range(k), repeat=len(hs)):
        prev = i
        gs: List[int] = []
        for h, nxt in zip(hs, path):
            gs.append(group.mul(group.mul(inv_gammas[prev], h), gammas[nxt]))
            prev = nxt
        yield tuple(gs), prev


def clubsuit(group: FiniteGroup, x: int, g: int, gs: Sequence[int], hs: Sequence[int]) -> Tuple[int, ...]:
    """♣: (h_1..h_t, g⁻¹ g_s⁻¹⋯g_1⁻¹ x, g_1..g_s)"""
    middle = group.mul(group.inv(group.mul(group.prod(gs), g)), x)
    return tuple(hs) + (middle,) + tuple(gs)
