"""Exact arithmetic in the field Q(sqrt2)."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction


@dataclass(frozen=True)
class QSqrt2:
    """p + q*sqrt(2) with rational p, q.  Zero tests and signs are exact."""

    p: Fraction
    q: Fraction

    @staticmethod
    def of(p, q=0) -> QSqrt2:
        return QSqrt2(Fraction(p), Fraction(q))

    def is_zero(self) -> bool:
        return self.p == 0 and self.q == 0

    def sign(self) -> int:
        p, q = self.p, self.q
        if p == 0 and q == 0:
            return 0
        if q == 0:
            return 1 if p > 0 else -1
        if p == 0:
            return 1 if q > 0 else -1
        if p > 0 and q > 0:
            return 1
        if p < 0 and q < 0:
            return -1
        # mixed signs: compare p**2 against 2*q**2
        if p > 0:
            return 1 if p * p > 2 * q * q else -1
        return 1 if 2 * q * q > p * p else -1

    def __add__(self, other) -> QSqrt2:
        other = _coerce(other)
        return QSqrt2(self.p + other.p, self.q + other.q)

    __radd__ = __add__

    def __sub__(self, other) -> QSqrt2:
        other = _coerce(other)
        return QSqrt2(self.p - other.p, self.q - other.q)

    def __rsub__(self, other) -> QSqrt2:
        return _coerce(other) - self

    def __neg__(self) -> QSqrt2:
        return QSqrt2(-self.p, -self.q)

    def __mul__(self, other) -> QSqrt2:
        other = _coerce(other)
        return QSqrt2(
            self.p * other.p + 2 * self.q * other.q,
            self.p * other.q + self.q * other.p,
        )

    __rmul__ = __mul__

    def inverse(self) -> QSqrt2:
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in Q(sqrt2)")
        # (p + q*sqrt2)(p - q*sqrt2) = p^2 - 2 q^2, nonzero for nonzero elements
        norm = self.p * self.p - 2 * self.q * self.q
        return QSqrt2(self.p / norm, -self.q / norm)

    def __truediv__(self, other) -> QSqrt2:
        return self * _coerce(other).inverse()

    def __rtruediv__(self, other) -> QSqrt2:
        return _coerce(other) * self.inverse()

    def __float__(self) -> float:
        return float(self.p) + float(self.q) * math.sqrt(2.0)

    def __str__(self) -> str:
        return f"{self.p}{'+' if self.q >= 0 else '-'}{abs(self.q)}*sqrt2"


def _coerce(x) -> QSqrt2:
    if isinstance(x, QSqrt2):
        return x
    if isinstance(x, (int, Fraction)):
        return QSqrt2(Fraction(x), Fraction(0))
    raise TypeError(f"cannot coerce {type(x).__name__} into Q(sqrt2)")


ZERO = QSqrt2.of(0)
ONE = QSqrt2.of(1)
SQRT2 = QSqrt2.of(0, 1)
# tan(22.5 degrees) = sqrt(2) - 1
TAN_22_5 = QSqrt2.of(-1, 1)
