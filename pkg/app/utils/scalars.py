# app/utils/scalars.py
"""
정확한 계수체 연산 (유리수 Q / 소수체 F_p)

엔진 내부에서는 속도를 위해 "raw" 값(int 또는 Fraction, F_p 는 0..p-1 정수)을
FieldSpec 메서드로 직접 다루고, 외부 API 에는 FieldScalar 를 노출한다.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Union

from app.core.exceptions import SpecMismatchError, TateEngineError

Raw = Union[int, Fraction]

_FIELD_PATTERN = re.compile(r"^(?:F[p_]?:?|Fp:)(\d+)$")


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class FieldSpec:
    """계수체 k. characteristic 0 은 Q, 소수 p 는 F_p"""

    characteristic: int = 0

    def __post_init__(self) -> None:
        if self.characteristic != 0 and not _is_prime(self.characteristic):
            raise TateEngineError(f"표수는 0 또는 소수여야 합니다: {self.characteristic}")

    # ----- #
    @classmethod
    def parse(cls, text: Union[str, int, "FieldSpec"]) -> "FieldSpec":
        """'Q', '0', 'Fp:3', 'F3', 'F_3' 형식을 모두 허용"""
        if isinstance(text, FieldSpec):
            return text
        if isinstance(text, int):
            return cls(text)
        label = str(text).strip()
        if label.upper() in {"Q", "QQ", "0"}:
            return cls(0)
        match = _FIELD_PATTERN.match(label)
        if not match:
            raise TateEngineError(f"알 수 없는 계수체 표기: {text!r}")
        return cls(int(match.group(1)))

    @property
    def label(self) -> str:
        return "Q" if self.characteristic == 0 else f"Fp:{self.characteristic}"

    @property
    def is_rational(self) -> bool:
        return self.characteristic == 0

    # ----- raw arithmetic ----- #
    def coerce(self, value: Any) -> Raw:
        """int / Fraction / 'num/den' 문자열 / FieldScalar 를 raw 값으로 변환"""
        if isinstance(value, FieldScalar):
            self.require_same(value.spec)
            return value.value
        if isinstance(value, str):
            value = Fraction(value.strip())
        p = self.characteristic
        if p == 0:
            q = Fraction(value)
            return q.numerator if q.denominator == 1 else q
        q = Fraction(value)
        if q.denominator % p == 0:
            raise TateEngineError(f"분모 {q.denominator} 는 F_{p} 에서 역원이 없습니다")
        return (q.numerator * pow(q.denominator, -1, p)) % p

    def add(self, a: Raw, b: Raw) -> Raw:
        if self.characteristic:
            return (a + b) % self.characteristic
        return a + b

    def mul(self, a: Raw, b: Raw) -> Raw:
        if self.characteristic:
            return (a * b) % self.characteristic
        return a * b

    def neg(self, a: Raw) -> Raw:
        if self.characteristic:
            return (-a) % self.characteristic
        return -a

    def sub(self, a: Raw, b: Raw) -> Raw:
        return self.add(a, self.neg(b))

    def inv(self, a: Raw) -> Raw:
        if a == 0:
            raise ZeroDivisionError("0 의 역원은 없습니다")
        if self.characteristic:
            return pow(int(a), -1, self.characteristic)
        q = 1 / Fraction(a)
        return q.numerator if q.denominator == 1 else q

    def signed(self, a: Raw, sign: int) -> Raw:
        return a if sign > 0 else self.neg(a)

    @staticmethod
    def is_zero(a: Raw) -> bool:
        return a == 0

    def encode(self, a: Raw) -> Union[str, int]:
        """JSON 표기: 유리수는 'num/den' 문자열, 잉여류는 정수"""
        if self.characteristic:
            return int(a)
        return str(Fraction(a))

    def decode(self, value: Union[str, int]) -> Raw:
        return self.coerce(value)

    def require_same(self, other: "FieldSpec") -> None:
        if other != self:
            raise SpecMismatchError(f"계수체 불일치: {self.label} != {other.label}")

    def scalar(self, value: Any) -> "FieldScalar":
        return FieldScalar(self.coerce(value), self)


@dataclass(frozen=True)
class FieldScalar:
    """계수체 원소 (raw 값 + FieldSpec)"""

    value: Raw
    spec: FieldSpec

    def _other(self, other: Any) -> Raw:
        if isinstance(other, FieldScalar):
            self.spec.require_same(other.spec)
            return other.value
        return self.spec.coerce(other)

    def __add__(self, other: Any) -> "FieldScalar":
        return FieldScalar(self.spec.add(self.value, self._other(other)), self.spec)

    __radd__ = __add__

    def __mul__(self, other: Any) -> "FieldScalar":
        return FieldScalar(self.spec.mul(self.value, self._other(other)), self.spec)

    __rmul__ = __mul__

    def __neg__(self) -> "FieldScalar":
        return FieldScalar(self.spec.neg(self.value), self.spec)

    def __sub__(self, other: Any) -> "FieldScalar":
        return FieldScalar(self.spec.sub(self.value, self._other(other)), self.spec)

    def __truediv__(self, other: Any) -> "FieldScalar":
        return self * FieldScalar(self.spec.inv(self._other(other)), self.spec)

    def inverse(self) -> "FieldScalar":
        return FieldScalar(self.spec.inv(self.value), self.spec)

    def is_zero(self) -> bool:
        return self.value == 0

    def encode(self) -> Union[str, int]:
        return self.spec.encode(self.value)

    def __str__(self) -> str:
        return str(self.encode())


def add(a: FieldScalar, b: FieldScalar) -> FieldScalar:
    """같은 계수체의 합. 계수체가 다르면 SpecMismatchError"""
    a.spec.require_same(b.spec)
    return a + b


def mul(a: FieldScalar, b: FieldScalar) -> FieldScalar:
    """같은 계수체의 곱. 계수체가 다르면 SpecMismatchError"""
    a.spec.require_same(b.spec)
    return a * b


QQ = FieldSpec(0)
