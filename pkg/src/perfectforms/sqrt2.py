"""Exact arithmetic in the ring Q(sqrt(2)).

Values are pairs a + b*sqrt(2) with rational a, b.  Needed so that
vectorized forms (whose off-diagonal coordinates carry a sqrt(2) factor)
and their determinants stay exact.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


def _coerce(value) -> "QSqrt2":
    if isinstance(value, QSqrt2):
        return value
    if isinstance(value, (int, Fraction)):
        return QSqrt2(Fraction(value), Fraction(0))
    raise TypeError(f"cannot interpret {value!r} as a + b*sqrt(2)")


@dataclass(frozen=True)
class QSqrt2:
    """a + b*sqrt(2) with exact rational a, b."""

    a: Fraction
    b: Fraction

    def __post_init__(self):
        object.__setattr__(self, "a", Fraction(self.a))
        object.__setattr__(self, "b", Fraction(self.b))

    @staticmethod
    def rational(value) -> "QSqrt2":
        return QSqrt2(Fraction(value), Fraction(0))

    @staticmethod
    def sqrt2_times(value) -> "QSqrt2":
        return QSqrt2(Fraction(0), Fraction(value))

    def is_rational(self) -> bool:
        return self.b == 0

    def conjugate(self) -> "QSqrt2":
        return QSqrt2(self.a, -self.b)

    def norm(self) -> Fraction:
        """Field norm a^2 - 2 b^2 (product with the conjugate)."""
        return self.a * self.a - 2 * self.b * self.b

    def sign(self) -> int:
        # sqrt(2) is irrational, so a + b*sqrt(2) = 0 forces a = b = 0.
        if self.a == 0 and self.b == 0:
            return 0
        if self.a >= 0 and self.b >= 0:
            return 1
        if self.a <= 0 and self.b <= 0:
            return -1
        # Mixed signs: compare a^2 with 2 b^2; the larger magnitude wins.
        if self.a > 0:
            return 1 if self.a * self.a > 2 * self.b * self.b else -1
        return 1 if self.a * self.a < 2 * self.b * self.b else -1

    def __bool__(self) -> bool:
        return self.a != 0 or self.b != 0

    def __add__(self, other):
        other = _coerce(other)
        return QSqrt2(self.a + other.a, self.b + other.b)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        return QSqrt2(self.a - other.a, self.b - other.b)

    def __rsub__(self, other):
        return _coerce(other) - self

    def __mul__(self, other):
        other = _coerce(other)
        return QSqrt2(
            self.a * other.a + 2 * self.b * other.b,
            self.a * other.b + self.b * other.a,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other)
        n = other.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in Q(sqrt(2))")
        num = self * other.conjugate()
        return QSqrt2(num.a / n, num.b / n)

    def __rtruediv__(self, other):
        return _coerce(other) / self

    def __neg__(self):
        return QSqrt2(-self.a, -self.b)

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def __eq__(self, other):
        try:
            other = _coerce(other)
        except TypeError:
            return NotImplemented
        return self.a == other.a and self.b == other.b

    def __hash__(self):
        return hash((self.a, self.b))

    def __lt__(self, other):
        return (self - _coerce(other)).sign() < 0

    def __le__(self, other):
        return (self - _coerce(other)).sign() <= 0

    def __gt__(self, other):
        return (self - _coerce(other)).sign() > 0

    def __ge__(self, other):
        return (self - _coerce(other)).sign() >= 0

    def __float__(self) -> float:
        return float(self.a) + float(self.b) * 2 ** 0.5

    def __repr__(self) -> str:
        if self.b == 0:
            return f"QSqrt2({self.a})"
        return f"QSqrt2({self.a} + {self.b}*sqrt(2))"

    def square_fraction(self) -> Fraction:
        """Exact rational square, defined when a = 0 or b = 0."""
        if self.a != 0 and self.b != 0:
            raise ValueError("square is irrational for mixed a + b*sqrt(2)")
        return self.a * self.a + 2 * self.b * self.b

    def to_json(self) -> dict:
        return {
            "rational": [self.a.numerator, self.a.denominator],
            "sqrt2": [self.b.numerator, self.b.denominator],
        }
