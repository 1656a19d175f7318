"""Truncated power series in hbar over an exact coefficient ring."""

from __future__ import annotations

from typing import Callable, Generic, Sequence, TypeVar

from .gaussian import Q

T = TypeVar("T")


class HbarSeries(Generic[T]):
    """Coefficients c_0..c_N of a series in hbar, truncated uniformly at order N.

    ``zero`` builds the additive identity of the coefficient ring; it is used
    to pad short coefficient lists and to seed products.
    """

    __slots__ = ("coeffs", "order", "_zero")

    def __init__(self, coeffs: Sequence[T], order: int, zero: Callable[[], T]):
        if order < 0:
            raise ValueError("truncation order must be non-negative")
        coeffs = list(coeffs[: order + 1])
        while len(coeffs) < order + 1:
            coeffs.append(zero())
        self.coeffs = coeffs
        self.order = order
        self._zero = zero

    @classmethod
    def constant(cls, c: T, order: int, zero: Callable[[], T]) -> "HbarSeries[T]":
        return cls([c], order, zero)

    def __getitem__(self, n: int) -> T:
        return self.coeffs[n]

    def __len__(self) -> int:
        return self.order + 1

    def _check(self, other: "HbarSeries") -> None:
        if other.order != self.order:
            raise ValueError(f"truncation orders differ: {self.order} vs {other.order}")

    def __add__(self, other: "HbarSeries[T]") -> "HbarSeries[T]":
        self._check(other)
        return HbarSeries([a + b for a, b in zip(self.coeffs, other.coeffs)], self.order, self._zero)

    def __sub__(self, other: "HbarSeries[T]") -> "HbarSeries[T]":
        self._check(other)
        return HbarSeries([a - b for a, b in zip(self.coeffs, other.coeffs)], self.order, self._zero)

    def __neg__(self) -> "HbarSeries[T]":
        return HbarSeries([-a for a in self.coeffs], self.order, self._zero)

    def __mul__(self, other) -> "HbarSeries[T]":
        if not isinstance(other, HbarSeries):
            return self.map(lambda c: c * other)
        self._check(other)
        out = [self._zero() for _ in range(self.order + 1)]
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j in range(self.order + 1 - i):
                b = other.coeffs[j]
                if b:
                    out[i + j] = out[i + j] + a * b
        return HbarSeries(out, self.order, self._zero)

    def __rmul__(self, other) -> "HbarSeries[T]":
        return self.map(lambda c: other * c)

    def map(self, fn: Callable[[T], T]) -> "HbarSeries[T]":
        return HbarSeries([fn(c) for c in self.coeffs], self.order, self._zero)

    def shift(self, k: int) -> "HbarSeries[T]":
        """Multiply by hbar**k (terms pushed beyond the order are dropped)."""
        return HbarSeries([self._zero()] * k + self.coeffs, self.order, self._zero)

    def truncate(self, order: int) -> "HbarSeries[T]":
        return HbarSeries(self.coeffs, order, self._zero)

    def exp(self) -> "HbarSeries[T]":
        """exp of a series with vanishing constant term."""
        if self.coeffs[0]:
            raise ValueError("exp needs a series without constant term")
        one = self._one()
        result = HbarSeries.constant(one, self.order, self._zero)
        term = result
        for k in range(1, self.order + 1):
            inv_k = Q(1, k)
            term = (term * self).map(lambda c: c * inv_k)
            result = result + term
        return result

    def _one(self):
        z = self._zero()
        if hasattr(type(z), "constant"):
            return type(z).constant(1)
        return 1

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __eq__(self, other) -> bool:
        if not isinstance(other, HbarSeries):
            return NotImplemented
        return self.order == other.order and (self - other).is_zero()

    __hash__ = None

    def __repr__(self) -> str:
        body = " + ".join(f"hbar^{n}*[{c}]" for n, c in enumerate(self.coeffs) if c)
        return f"HbarSeries(order={self.order}: {body or '0'})"

    def to_json(self) -> dict:
        return {"order": self.order, "coefficients": [c.to_json() for c in self.coeffs]}
