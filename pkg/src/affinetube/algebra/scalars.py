"""Exact scalars: rationals (``fractions.Fraction``) and Gaussian rationals."""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational as _RationalABC
from typing import Union

Rational = Fraction

Scalar = Union[int, Fraction, "GaussRational"]


def as_rational(value) -> Fraction:
    """Coerce an int, Fraction or ``"p/q"`` string to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, str)):
        return Fraction(value)
    if isinstance(value, GaussRational):
        if value.im != 0:
            raise ValueError(f"{value} is not real")
        return value.re
    raise TypeError(f"cannot convert {type(value).__name__} to an exact rational")


class GaussRational:
    """Element re + i*im of Q(i)."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = as_rational(re)
        self.im = as_rational(im)

    @classmethod
    def coerce(cls, value) -> GaussRational:
        if isinstance(value, GaussRational):
            return value
        return cls(value, 0)

    def conjugate(self) -> GaussRational:
        return GaussRational(self.re, -self.im)

    def norm(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def is_real(self) -> bool:
        return self.im == 0

    def __add__(self, other):
        if isinstance(other, GaussRational):
            return GaussRational(self.re + other.re, self.im + other.im)
        if isinstance(other, _RationalABC):
            return GaussRational(self.re + other, self.im)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return GaussRational(-self.re, -self.im)

    def __pos__(self):
        return self

    def __sub__(self, other):
        if isinstance(other, GaussRational):
            return GaussRational(self.re - other.re, self.im - other.im)
        if isinstance(other, _RationalABC):
            return GaussRational(self.re - other, self.im)
        return NotImplemented

    def __rsub__(self, other):
        if isinstance(other, _RationalABC):
            return GaussRational(other - self.re, -self.im)
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, GaussRational):
            return GaussRational(
                self.re * other.re - self.im * other.im,
                self.re * other.im + self.im * other.re,
            )
        if isinstance(other, _RationalABC):
            return GaussRational(self.re * other, self.im * other)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, GaussRational):
            d = other.norm()
            if d == 0:
                raise ZeroDivisionError("division by zero Gaussian rational")
            return self * GaussRational(other.re / d, -other.im / d)
        if isinstance(other, _RationalABC):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return GaussRational(self.re / other, self.im / other)
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, _RationalABC):
            return GaussRational(other, 0) / self
        return NotImplemented

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return GaussRational(1) / (self ** (-k))
        result = GaussRational(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, GaussRational):
            return self.re == other.re and self.im == other.im
        if isinstance(other, _RationalABC):
            return self.im == 0 and self.re == other
        return NotImplemented

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __repr__(self):
        return f"GaussRational({self.re!s}, {self.im!s})"

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return f"{self.im}*I"
        sign = "+" if self.im > 0 else "-"
        return f"({self.re}{sign}{abs(self.im)}*I)"


I = GaussRational(0, 1)


def conj(value):
    if isinstance(value, GaussRational):
        return value.conjugate()
    return value


def real_part(value) -> Fraction:
    if isinstance(value, GaussRational):
        return value.re
    return Fraction(value)


def imag_part(value) -> Fraction:
    if isinstance(value, GaussRational):
        return value.im
    return Fraction(0)


def exact_str(value) -> str:
    """Serialization used in reports: ``"p/q"`` or ``"a+b*I"``."""
    if isinstance(value, GaussRational):
        if value.im == 0:
            return str(value.re)
        if not value.re:
            return f"{value.im}*I"
        sign = "+" if value.im > 0 else "-"
        return f"{value.re}{sign}{abs(value.im)}*I"
    return str(Fraction(value))
