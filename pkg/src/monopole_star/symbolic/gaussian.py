"""Exact Gaussian rationals ``re + i*im`` backed by gmpy2 rationals."""

from __future__ import annotations

from fractions import Fraction

import gmpy2

Q = gmpy2.mpq
_ZERO = Q(0)
_MPQ = type(_ZERO)


def rational(value) -> "gmpy2.mpq":
    """Coerce ints, Fractions, mpq or ``"num/den"`` strings to an exact rational."""
    if isinstance(value, _MPQ):
        return value
    if isinstance(value, str):
        return Q(value.strip())
    if isinstance(value, float):
        raise TypeError("floats are not accepted on the exact path")
    if isinstance(value, Fraction):
        return Q(value.numerator, value.denominator)
    return Q(value)


def rational_str(x) -> str:
    """Canonical ``"num/den"`` form (den is always present and positive)."""
    x = rational(x)
    return f"{x.numerator}/{x.denominator}"


class GaussianRational:
    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = rational(re)
        self.im = rational(im)

    @classmethod
    def _raw(cls, re, im) -> "GaussianRational":
        g = object.__new__(cls)
        g.re = re
        g.im = im
        return g

    @classmethod
    def coerce(cls, value) -> "GaussianRational":
        if isinstance(value, GaussianRational):
            return value
        if isinstance(value, complex):
            raise TypeError("complex floats are not accepted on the exact path")
        return cls._raw(rational(value), _ZERO)

    def __add__(self, other):
        if not isinstance(other, GaussianRational):
            other = GaussianRational.coerce(other)
        return GaussianRational._raw(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, GaussianRational):
            other = GaussianRational.coerce(other)
        return GaussianRational._raw(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return GaussianRational.coerce(other) - self

    def __neg__(self):
        return GaussianRational._raw(-self.re, -self.im)

    def __mul__(self, other):
        if not isinstance(other, GaussianRational):
            if isinstance(other, (int, _MPQ)):
                return GaussianRational._raw(self.re * other, self.im * other)
            other = GaussianRational.coerce(other)
        a, b, c, d = self.re, self.im, other.re, other.im
        # real-only operands dominate the workload
        if not b:
            if not d:
                return GaussianRational._raw(a * c, _ZERO)
            return GaussianRational._raw(a * c, a * d)
        if not d:
            return GaussianRational._raw(a * c, b * c)
        return GaussianRational._raw(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = GaussianRational.coerce(other)
        den = other.re * other.re + other.im * other.im
        if not den:
            raise ZeroDivisionError("division by zero Gaussian rational")
        num = self * other.conjugate()
        return GaussianRational._raw(num.re / den, num.im / den)

    def conjugate(self) -> "GaussianRational":
        return GaussianRational._raw(self.re, -self.im)

    def __pow__(self, n: int):
        if n < 0:
            return GaussianRational(1) / (self ** (-n))
        out = GaussianRational._raw(Q(1), _ZERO)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __bool__(self) -> bool:
        return bool(self.re) or bool(self.im)

    def __eq__(self, other) -> bool:
        if not isinstance(other, GaussianRational):
            try:
                other = GaussianRational.coerce(other)
            except TypeError:
                return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self) -> int:
        return hash((self.re, self.im))

    def __complex__(self) -> complex:
        return complex(float(self.re), float(self.im))

    def __repr__(self) -> str:
        return f"GaussianRational({self!s})"

    def __str__(self) -> str:
        if not self.im:
            return str(self.re)
        if not self.re:
            return f"{self.im}*i"
        sign = "+" if self.im > 0 else "-"
        return f"({self.re} {sign} {abs(self.im)}*i)"

    def to_json(self) -> dict:
        return {"re": rational_str(self.re), "im": rational_str(self.im)}

    @classmethod
    def from_json(cls, obj) -> "GaussianRational":
        if isinstance(obj, dict):
            return cls(obj.get("re", "0/1"), obj.get("im", "0/1"))
        return cls(obj)


I = GaussianRational(0, 1)
ONE = GaussianRational(1, 0)
ZERO = GaussianRational(0, 0)
