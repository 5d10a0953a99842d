"""Exact scalar fields: rationals and Gaussian rationals."""

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Any, Union

Scalar = Fraction
Number = Union[int, Fraction, "ComplexScalar"]

ZERO = Fraction(0)
ONE = Fraction(1)


def as_fraction(value: Union[int, str, Fraction]) -> Fraction:
    """Coerce an int, a ``"p/q"`` string or a Fraction to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(value, (int, str)):
        return Fraction(value)
    raise TypeError(f"cannot read {value!r} as an exact rational")


@dataclass(frozen=True, slots=True)
class ComplexScalar:
    """A Gaussian rational ``re + i*im``."""
    re: Fraction
    im: Fraction = ZERO

    @staticmethod
    def lift(value: Number) -> "ComplexScalar":
        if isinstance(value, ComplexScalar):
            return value
        return ComplexScalar(Fraction(value), ZERO)

    @property
    def real(self) -> Fraction:
        return self.re

    @property
    def imag(self) -> Fraction:
        return self.im

    def is_real(self) -> bool:
        return self.im == 0

    def conjugate(self) -> "ComplexScalar":
        return ComplexScalar(self.re, -self.im)

    def abs2(self) -> Fraction:
        """Squared modulus, always a nonnegative rational."""
        return self.re * self.re + self.im * self.im

    def __bool__(self) -> bool:
        return bool(self.re) or bool(self.im)

    def __neg__(self) -> "ComplexScalar":
        return ComplexScalar(-self.re, -self.im)

    def __add__(self, other: Any) -> "ComplexScalar":
        if isinstance(other, ComplexScalar):
            return ComplexScalar(self.re + other.re, self.im + other.im)
        if isinstance(other, (int, Fraction)):
            return ComplexScalar(self.re + other, self.im)
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other: Any) -> "ComplexScalar":
        if isinstance(other, ComplexScalar):
            return ComplexScalar(self.re - other.re, self.im - other.im)
        if isinstance(other, (int, Fraction)):
            return ComplexScalar(self.re - other, self.im)
        return NotImplemented

    def __rsub__(self, other: Any) -> "ComplexScalar":
        if isinstance(other, (int, Fraction)):
            return ComplexScalar(other - self.re, -self.im)
        return NotImplemented

    def __mul__(self, other: Any) -> "ComplexScalar":
        if isinstance(other, ComplexScalar):
            return ComplexScalar(
                self.re * other.re - self.im * other.im,
                self.re * other.im + self.im * other.re,
            )
        if isinstance(other, (int, Fraction)):
            return ComplexScalar(self.re * other, self.im * other)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other: Any) -> "ComplexScalar":
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return ComplexScalar(self.re / other, self.im / other)
        if isinstance(other, ComplexScalar):
            norm = other.abs2()
            if norm == 0:
                raise ZeroDivisionError("division by zero")
            num = self * other.conjugate()
            return ComplexScalar(num.re / norm, num.im / norm)
        return NotImplemented

    def __rtruediv__(self, other: Any) -> "ComplexScalar":
        if isinstance(other, (int, Fraction)):
            return ComplexScalar(Fraction(other), ZERO) / self
        return NotImplemented

    def __eq__(self, other: object) -> bool:
        if isinstance(other, ComplexScalar):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return self.im == 0 and self.re == other
        return NotImplemented

    def __hash__(self) -> int:
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __repr__(self) -> str:
        return f"ComplexScalar({format_rational(self.re)}, {format_rational(self.im)})"

    def __str__(self) -> str:
        if self.im == 0:
            return format_rational(self.re)
        return f"{format_rational(self.re)}{'+' if self.im >= 0 else '-'}{format_rational(abs(self.im))}i"


I = ComplexScalar(ZERO, ONE)


def conj(value: Number) -> Number:
    """Complex conjugate; identity on rationals."""
    if isinstance(value, ComplexScalar):
        return value.conjugate()
    return value


def real_part(value: Number) -> Fraction:
    if isinstance(value, ComplexScalar):
        return value.re
    return Fraction(value)


def format_rational(value: Union[int, Fraction]) -> str:
    """Lowest-terms ``"p/q"`` text, or ``"p"`` for integers."""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def plain_rational(value: Union[int, Fraction]) -> Union[int, str]:
    """Canonical JSON form of a rational: bare integer or ``"p/q"`` string."""
    value = Fraction(value)
    if value.denominator == 1:
        return value.numerator
    return f"{value.numerator}/{value.denominator}"


def to_plain(value: Any) -> Any:
    """Recursively convert exact values into JSON-compatible data."""
    if isinstance(value, bool) or value is None or isinstance(value, str):
        return value
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, Fraction):
        return plain_rational(value)
    if isinstance(value, int):
        return value
    if isinstance(value, ComplexScalar):
        return {"re": plain_rational(value.re), "im": plain_rational(value.im)}
    if isinstance(value, dict):
        return {_plain_key(k): to_plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_plain(v) for v in value]
    if hasattr(value, "to_dict"):
        return to_plain(value.to_dict())
    raise TypeError(f"no plain representation for {type(value).__name__}")


def _plain_key(key: Any) -> str:
    if isinstance(key, str):
        return key
    if isinstance(key, tuple):
        return "(" + ",".join(str(to_plain(k)) for k in key) + ")"
    return str(to_plain(key))
