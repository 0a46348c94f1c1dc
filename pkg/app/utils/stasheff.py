# app/utils/stasheff.py
"""
Stasheff 관계식과 검사용 입력 생성기 / 보고서

관계식 (n 개 입력):
    Σ_{r+s+t=n, s≥1} (-1)^{r+st} (-1)^{(2-s)(|a_1|+...+|a_r|)}
        m_{r+1+t}(a_1, ..., a_r, m_s(a_{r+1}, ..., a_{r+s}), a_{r+s+1}, ..., a_n) = 0
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from itertools import product
from typing import Any, Callable, Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from app.core.exceptions import DegreeError
from app.utils.sparse import GradedVector, Key

logger = logging.getLogger(__name__)

Mult = Callable[[int, Sequence[GradedVector]], GradedVector]
Case = Tuple[Tuple[int, Key], ...]

MAX_RECORDED_FAILURES = 20


def stasheff_relation(mult: Mult, inputs: Sequence[GradedVector], n: Optional[int] = None) -> GradedVector:
    """관계식 좌변. A∞ 구조라면 0 이 나와야 한다"""
    n = len(inputs) if n is None else n
    if n != len(inputs) or n < 1:
        raise DegreeError(f"Stasheff 관계식 n={n} 에 입력 {len(inputs)} 개가 주어졌습니다")
    total: Optional[GradedVector] = None
    for s in range(1, n + 1):
        for r in range(0, n - s + 1):
            t = n - r - s
            inner = mult(s, inputs[r : r + s])
            outer = mult(r + 1 + t, list(inputs[:r]) + [inner] + list(inputs[r + s :]))
            exponent = r + s * t + (2 - s) * sum(a.degree for a in inputs[:r])
            term = outer.scale(-1) if exponent % 2 else outer
            total = term if total is None else total + term
    return total


def window_degrees(window: Tuple[int, int]) -> List[int]:
    lo, hi = window
    if lo > hi:
        raise DegreeError(f"차수 구간이 비었습니다: [{lo}, {hi}]")
    return list(range(lo, hi + 1))


class CaseSampler:
    """
    입력 자리별 기저 원소 조합 생성기

    전체 조합 수가 max_cases 이하이면 전수, 넘으면 seed 고정 표본 samples 개.

    Args:
        basis: 차수 → 기저 키 목록
        slots: 자리마다 허용할 차수 목록
    """

    def __init__(
        self,
        basis: Callable[[int], Iterable[Key]],
        slots: Sequence[Sequence[int]],
        *,
        max_cases: int,
        samples: int,
        seed: int,
    ) -> None:
        self.seed = seed
        self.samples = samples
        cache: Dict[int, List[Tuple[int, Key]]] = {}
        self._pools: List[List[Tuple[int, Key]]] = []
        for degrees in slots:
            pool: List[Tuple[int, Key]] = []
            for d in degrees:
                if d not in cache:
                    cache[d] = [(d, tuple(key)) for key in basis(d)]
                pool.extend(cache[d])
            self._pools.append(pool)
        self.total = math.prod(len(p) for p in self._pools) if self._pools else 0
        self.exhaustive = self.total <= max_cases

    @classmethod
    def uniform(cls, basis: Callable[[int], Iterable[Key]], degrees: Sequence[int], arity: int, **kwargs: Any) -> "CaseSampler":
        return cls(basis, [degrees] * arity, **kwargs)

    def __iter__(self) -> Iterator[Case]:
        if self.exhaustive:
            yield from product(*self._pools)
            return
        if self.total == 0:
            return
        rng = np.random.default_rng(self.seed)
        for _ in range(self.samples):
            yield tuple(pool[int(rng.integers(len(pool)))] for pool in self._pools)

    def __len__(self) -> int:
        if self.exhaustive:
            return self.total
        return self.samples if self.total else 0


@dataclass
class Failure:
    identity: str
    witness: Any
    detail: str = ""

    def to_dict(self) -> Dict[str, Any]:
        return {"identity": self.identity, "witness": self.witness, "detail": self.detail}


@dataclass
class CheckReport:
    """검사 하나의 결과. (group, field, window, seed) 가 같으면 내용도 같다"""

    check: str
    group: str
    field: str
    window: Tuple[int, int]
    seed: Optional[int] = None
    cases: int = 0
    failures: List[Failure] = field(default_factory=list)
    failure_count: int = 0
    notes: List[str] = field(default_factory=list)
    exhaustive: bool = True

    @property
    def passed(self) -> bool:
        return self.failure_count == 0

    def record(self, identity: str, ok: bool, witness: Any = None, detail: str = "") -> bool:
        self.cases += 1
        if not ok:
            self.failure_count += 1
            if len(self.failures) < MAX_RECORDED_FAILURES:
                self.failures.append(Failure(identity, witness, detail))
            if self.failure_count == 1:
                logger.warning("[%s] %s 실패: witness=%s %s", self.check, identity, witness, detail)
        return ok

    def to_dict(self) -> Dict[str, Any]:
        return {
            "check": self.check,
            "group": self.group,
            "field": self.field,
            "window": list(self.window),
            "seed": self.seed,
            "passed": self.passed,
            "cases": self.cases,
            "exhaustive": self.exhaustive,
            "failure_count": self.failure_count,
            "failures": [f.to_dict() for f in self.failures],
            "notes": list(self.notes),
        }


def witness_of(case: Case) -> List[Dict[str, Any]]:
    return [{"degree": d, "key": list(k)} for d, k in case]
