"""Radial functions P(q)|q|^-m and phase-space symbols polynomial in p."""

from __future__ import annotations

from itertools import product

from .gaussian import GaussianRational
from .terms import TermPoly

_E = ((1, 0, 0), (0, 1, 0), (0, 0, 1))


class RadialFunction(TermPoly):
    """Finite sum of c * mu**s * q**alpha * |q|**-m with Gaussian-rational c."""

    __slots__ = ()
    EXTRA_LEN = 0

    @classmethod
    def monomial(cls, alpha=(0, 0, 0), m: int = 0, mu: int = 0, coeff=1):
        return cls({(mu, m, tuple(alpha), ()): coeff})

    @classmethod
    def q(cls, axis: int):
        return cls.monomial(_E[axis])

    @classmethod
    def rinv(cls, m: int = 1):
        return cls.monomial((0, 0, 0), m)

    def evaluate(self, q, mu: float = 0.0) -> complex:
        return self._eval_terms(q, mu, ())


class SymbolFunction(TermPoly):
    """Phase-space symbol: polynomial in p with radial coefficients in q."""

    __slots__ = ()
    EXTRA_LEN = 3
    EXTRA_NAMES = (("p", 0),)

    @classmethod
    def monomial(cls, p_alpha=(0, 0, 0), q_alpha=(0, 0, 0), m: int = 0, mu: int = 0, coeff=1):
        return cls({(mu, m, tuple(q_alpha), tuple(p_alpha)): coeff})

    @classmethod
    def p(cls, axis: int):
        return cls.monomial(p_alpha=_E[axis])

    @classmethod
    def q(cls, axis: int):
        return cls.monomial(q_alpha=_E[axis])

    @classmethod
    def rinv(cls, m: int = 1):
        return cls.monomial(m=m)

    @classmethod
    def from_radial(cls, f: RadialFunction) -> "SymbolFunction":
        return cls._from_raw({(mu, m, al, (0, 0, 0)): c for (mu, m, al, _), c in f.terms.items()})

    def diff_p(self, axis: int) -> "SymbolFunction":
        out = {}
        for (mu, m, al, pa), c in self.terms.items():
            k = pa[axis]
            if k:
                lowered = tuple(x - (i == axis) for i, x in enumerate(pa))
                out[(mu, m, al, lowered)] = c * k
        return SymbolFunction._from_raw(out)

    def diff(self, index: tuple) -> "SymbolFunction":
        """Apply d_p^alpha d_q^gamma for a 6-tuple ``index = alpha + gamma``."""
        out = self
        for axis in range(3):
            for _ in range(index[axis]):
                out = out.diff_p(axis)
                if not out:
                    return out
        for axis in range(3):
            for _ in range(index[3 + axis]):
                out = out.diff_q(axis)
                if not out:
                    return out
        return out

    def p_degree(self) -> int:
        return max((sum(k[3]) for k in self.terms), default=0)

    def evaluate(self, p, q, mu: float = 0.0) -> complex:
        return self._eval_terms(q, mu, p)

    def _extra_factors(self, e):
        return [n if k == 1 else f"{n}^{k}" for n, k in zip(("p1", "p2", "p3"), e) if k]


def rf_diff(f: TermPoly, axis: int) -> TermPoly:
    """Exact d/dq^axis (axis 0, 1, 2) of a radial-class object."""
    return f.diff_q(axis)


def levi_civita(i: int, j: int, k: int) -> int:
    return (i - j) * (j - k) * (k - i) // 2


def beta(i: int, j: int) -> RadialFunction:
    """Monopole field matrix beta_ij(q) = mu * eps_ijk q^k / |q|^3 (0-based indices)."""
    terms = {}
    for k in range(3):
        eps = levi_civita(i, j, k)
        if eps:
            terms[(1, 3, _E[k], ())] = eps
    return RadialFunction(terms)


def beta_matrix() -> list[list[RadialFunction]]:
    return [[beta(i, j) for j in range(3)] for i in range(3)]


def parity_split_is_zero(f: TermPoly) -> bool:
    """Independent zero test: common denominator per parity of m.

    Within each parity class of the radial power m, every term is raised to the
    largest denominator |q|^M of that class by multiplying the numerator with
    (q1**2 + q2**2 + q3**2)**((M - m)/2); the element vanishes iff every
    resulting numerator polynomial (grouped by mu power and extra exponents)
    is the zero polynomial.  Does not rely on the canonical reduction.
    """
    classes: dict = {}
    for (mu, m, al, e), c in f.terms.items():
        classes.setdefault((m % 2, mu, e), []).append((m, al, c))
    for terms in classes.values():
        top = max(m for m, _, _ in terms)
        numer: dict = {}
        for m, al, c in terms:
            for expo, n in _sum_sq_power((top - m) // 2).items():
                key = (al[0] + expo[0], al[1] + expo[1], al[2] + expo[2])
                numer[key] = numer.get(key, 0) + c * n
        if any(numer.values()):
            return False
    return True


def _sum_sq_power(k: int) -> dict:
    """Expand (q1^2 + q2^2 + q3^2)**k as {exponents: integer coefficient}."""
    from math import factorial

    out = {}
    for a, b in product(range(k + 1), repeat=2):
        c = k - a - b
        if c < 0:
            continue
        out[(2 * a, 2 * b, 2 * c)] = factorial(k) // (factorial(a) * factorial(b) * factorial(c))
    return out


__all__ = [
    "GaussianRational",
    "RadialFunction",
    "SymbolFunction",
    "beta",
    "beta_matrix",
    "levi_civita",
    "parity_split_is_zero",
    "rf_diff",
]
