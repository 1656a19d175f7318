"""Shared term-dictionary machinery for the radial function class.

Every exact object in the package is a finite sum of terms

    c * mu**s * q**alpha * |q|**(-m) * (extra monomial)

where the extra monomial is empty (radial functions), a monomial in p
(phase-space symbols) or a monomial in the twelve Fourier variables.  Terms are
keyed by ``(s, m, alpha, extra)`` so that sorting keys gives the canonical
lexicographic order on (mu power, radial power, alpha, extra).

Canonical form.  Because |q|**2 = q1**2 + q2**2 + q3**2, the raw term set is
redundant.  Terms are kept reduced by the rewrite

    q3**2 |q|**(-m)  ->  |q|**(-(m-2)) - (q1**2 + q2**2) |q|**(-m)     (m >= 2)

applied until every term has alpha3 <= 1 or m <= 1.  The reduced monomials
form a basis of the class, so an element is zero iff its term dict is empty.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import product
from typing import Iterable

from .gaussian import GaussianRational, ZERO

Key = tuple  # (mu, m, alpha, extra)


@lru_cache(maxsize=None)
def reduce_monomial(alpha: tuple, m: int) -> tuple:
    """Canonical expansion of q**alpha |q|**(-m) as ((int coeff, alpha, m), ...)."""
    a, b, c = alpha
    if c < 2 or m < 2:
        return ((1, alpha, m),)
    acc: dict = {}
    for sign, al in ((1, (a, b, c - 2)), (-1, (a + 2, b, c - 2)), (-1, (a, b + 2, c - 2))):
        mm = m - 2 if sign == 1 else m
        for n, al2, m2 in reduce_monomial(al, mm):
            acc[(al2, m2)] = acc.get((al2, m2), 0) + sign * n
    return tuple((n, k[0], k[1]) for k, n in sorted(acc.items()) if n)


@lru_cache(maxsize=None)
def diff_monomial(alpha: tuple, m: int, axis: int) -> tuple:
    """d/dq^axis of q**alpha |q|**(-m), canonically reduced."""
    acc: dict = {}
    if alpha[axis]:
        lowered = tuple(x - (k == axis) for k, x in enumerate(alpha))
        for n, al, mm in reduce_monomial(lowered, m):
            acc[(al, mm)] = acc.get((al, mm), 0) + alpha[axis] * n
    if m:
        raised = tuple(x + (k == axis) for k, x in enumerate(alpha))
        for n, al, mm in reduce_monomial(raised, m + 2):
            acc[(al, mm)] = acc.get((al, mm), 0) - m * n
    return tuple((n, k[0], k[1]) for k, n in sorted(acc.items()) if n)


def _add_tuples(a: tuple, b: tuple) -> tuple:
    if not a:
        return b
    if not b:
        return a
    return tuple(x + y for x, y in zip(a, b))


class TermPoly:
    """Base class: a dict of canonical keys to nonzero Gaussian rationals."""

    __slots__ = ("terms",)
    EXTRA_LEN = 0

    def __init__(self, terms=None, *, _canonical: bool = False):
        if terms is None:
            self.terms = {}
        elif _canonical:
            self.terms = terms
        else:
            self.terms = {}
            for key, c in dict(terms).items():
                self._accumulate(self.terms, key, GaussianRational.coerce(c))
            self.terms = {k: v for k, v in self.terms.items() if v}

    @classmethod
    def _accumulate(cls, out: dict, key: Key, c: GaussianRational) -> None:
        mu, m, alpha, extra = key
        if len(extra) != cls.EXTRA_LEN:
            raise ValueError(f"{cls.__name__} expects {cls.EXTRA_LEN} extra exponents")
        for n, al, mm in reduce_monomial(tuple(alpha), m):
            k = (mu, mm, al, tuple(extra))
            out[k] = out.get(k, ZERO) + c * n

    @classmethod
    def _from_raw(cls, terms: dict):
        return cls({k: v for k, v in terms.items() if v}, _canonical=True)

    @classmethod
    def zero(cls):
        return cls._from_raw({})

    @classmethod
    def constant(cls, c=1):
        c = GaussianRational.coerce(c)
        return cls._from_raw({(0, 0, (0, 0, 0), (0,) * cls.EXTRA_LEN): c})

    # -- ring structure -------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, TermPoly):
            other = type(self).constant(other)
        cls = _result_class(self, other)
        out = dict(_lift(self, cls))
        for k, c in _lift(other, cls).items():
            out[k] = out.get(k, ZERO) + c
        return cls._from_raw(out)

    __radd__ = __add__

    def __neg__(self):
        return type(self)._from_raw({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c):
        c = GaussianRational.coerce(c)
        if not c:
            return type(self).zero()
        return type(self)._from_raw({k: v * c for k, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, TermPoly):
            return self.scale(other)
        cls = _result_class(self, other)
        out: dict = {}
        get = out.get
        items2 = list(other.terms.items())
        for (mu1, m1, a1, e1), c1 in self.terms.items():
            for (mu2, m2, a2, e2), c2 in items2:
                c = c1 * c2
                e = _add_tuples(e1, e2)
                al = (a1[0] + a2[0], a1[1] + a2[1], a1[2] + a2[2])
                for n, al2, mm in reduce_monomial(al, m1 + m2):
                    k = (mu1 + mu2, mm, al2, e)
                    out[k] = get(k, ZERO) + (c if n == 1 else c * n)
        result = cls._from_raw(out)
        result._check_degree()
        return result

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, n: int):
        out = type(self).constant(1)
        for _ in range(n):
            out = out * self
        return out

    def _check_degree(self) -> None:
        pass

    def diff_q(self, axis: int):
        """Exact partial derivative with respect to q^axis (axis in 0, 1, 2)."""
        out: dict = {}
        for (mu, m, al, e), c in self.terms.items():
            for n, al2, mm in diff_monomial(al, m, axis):
                k = (mu, mm, al2, e)
                out[k] = out.get(k, ZERO) + c * n
        return type(self)._from_raw(out)

    # -- predicates -----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, TermPoly):
            other = type(self).constant(other)
        return (self - other).is_zero()

    __hash__ = None

    def __len__(self) -> int:
        return len(self.terms)

    def sorted_items(self) -> list:
        return sorted(self.terms.items(), key=lambda kv: kv[0])

    def mu_degrees(self) -> list[int]:
        return sorted({k[0] for k in self.terms})

    def mu_part(self, s: int):
        """Terms of mu-degree exactly ``s``."""
        return type(self)._from_raw({k: c for k, c in self.terms.items() if k[0] == s})

    def drop_mu(self):
        """The mu = 0 specialisation."""
        return self.mu_part(0)

    def is_real(self) -> bool:
        return all(not c.im for c in self.terms.values())

    # -- numerics -------------------------------------------------------------

    def _eval_terms(self, q, mu: float, extra_vals) -> complex:
        r = (q[0] * q[0] + q[1] * q[1] + q[2] * q[2]) ** 0.5
        total = 0j
        for (s, m, al, e), c in self.terms.items():
            val = complex(c) * mu ** s * q[0] ** al[0] * q[1] ** al[1] * q[2] ** al[2] / r ** m
            for x, k in zip(extra_vals, e):
                if k:
                    val *= x ** k
            total += val
        return total

    # -- serialisation --------------------------------------------------------

    EXTRA_NAMES: tuple = ()

    def to_json(self) -> list:
        out = []
        for (s, m, al, e), c in self.sorted_items():
            obj = {"coeff": c.to_json(), "mu": s, "m": m, "q": list(al)}
            for name, idx in self.EXTRA_NAMES:
                obj[name] = list(e[idx:idx + 3])
            out.append(obj)
        return out

    @classmethod
    def from_json(cls, data: Iterable[dict]):
        terms: dict = {}
        for obj in data:
            extra: list = [0] * cls.EXTRA_LEN
            for name, idx in cls.EXTRA_NAMES:
                extra[idx:idx + 3] = obj.get(name, [0, 0, 0])
            cls._accumulate(terms, (int(obj["mu"]), int(obj["m"]), tuple(obj["q"]), tuple(extra)),
                            GaussianRational.from_json(obj["coeff"]))
        return cls._from_raw(terms)

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self})"

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for (s, m, al, e), c in self.sorted_items():
            factors = [f"({c})"] if (c.re != 1 or c.im) else []
            if s:
                factors.append("mu" if s == 1 else f"mu^{s}")
            for name, k in zip(("q1", "q2", "q3"), al):
                if k:
                    factors.append(name if k == 1 else f"{name}^{k}")
            factors.extend(self._extra_factors(e))
            if m:
                factors.append(f"|q|^-{m}")
            parts.append("*".join(factors) or "1")
        return " + ".join(parts)

    def _extra_factors(self, e: tuple) -> list[str]:
        return []


def _result_class(a: TermPoly, b: TermPoly):
    ta, tb = type(a), type(b)
    if ta is tb:
        return ta
    if ta.EXTRA_LEN == 0:
        return tb
    if tb.EXTRA_LEN == 0:
        return ta
    raise TypeError(f"cannot combine {ta.__name__} with {tb.__name__}")


def _lift(x: TermPoly, cls) -> dict:
    if type(x) is cls:
        return x.terms
    pad = (0,) * cls.EXTRA_LEN
    return {(mu, m, al, pad): c for (mu, m, al, _), c in x.terms.items()}


def multi_indices(n_vars: int, degree: int):
    """All exponent tuples of ``n_vars`` variables with the given total degree."""
    for combo in product(range(degree + 1), repeat=n_vars):
        if sum(combo) == degree:
            yield combo
