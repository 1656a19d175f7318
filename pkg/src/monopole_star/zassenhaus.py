"""Zassenhaus terms in the free algebra and their monopole specialisation.

The terms C_n are defined by e^{X+Y} = e^X e^Y e^{C_2} e^{C_3} ...  They are
extracted in the free associative algebra on {X, Y}, converted to right-nested
commutators with the Dynkin idempotent, and finally evaluated in the Lie
algebra spanned by X = J u.P, Y = J u'.P and functions J f(x).  In that algebra

    [X, Y]      = -hbar u.beta u'
    [X, J f]    =  hbar (u.d) f
    [Y, J f]    =  hbar (u'.d) f
    [J f, J g]  =  0

(the factor J on every function is left implicit).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable

from .errors import NotLieElement
from .symbolic.fourier import FourierPolynomial, bilinear, fourier_zero
from .symbolic.gaussian import Q, rational, rational_str
from .symbolic.hbar import HbarSeries
from .symbolic.radial import beta_matrix

LETTERS = ("X", "Y")


class FreeAlgebraElement:
    """Rational combination of words in X, Y, truncated above ``max_degree``."""

    __slots__ = ("terms", "max_degree")

    def __init__(self, terms: dict | None = None, max_degree: int = 6):
        self.max_degree = max_degree
        self.terms = {w: rational(c) for w, c in (terms or {}).items() if c and len(w) <= max_degree}

    @classmethod
    def gen(cls, letter: str, max_degree: int) -> "FreeAlgebraElement":
        return cls({letter: 1}, max_degree)

    @classmethod
    def one(cls, max_degree: int) -> "FreeAlgebraElement":
        return cls({"": 1}, max_degree)

    def _new(self, terms: dict) -> "FreeAlgebraElement":
        return FreeAlgebraElement(terms, self.max_degree)

    def __add__(self, other: "FreeAlgebraElement") -> "FreeAlgebraElement":
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out.get(w, 0) + c
        return self._new(out)

    def __neg__(self) -> "FreeAlgebraElement":
        return self._new({w: -c for w, c in self.terms.items()})

    def __sub__(self, other: "FreeAlgebraElement") -> "FreeAlgebraElement":
        return self + (-other)

    def __mul__(self, other) -> "FreeAlgebraElement":
        if not isinstance(other, FreeAlgebraElement):
            c = rational(other)
            return self._new({w: v * c for w, v in self.terms.items()})
        out: dict = {}
        cap = min(self.max_degree, other.max_degree)
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                if len(w1) + len(w2) <= cap:
                    w = w1 + w2
                    out[w] = out.get(w, 0) + c1 * c2
        return FreeAlgebraElement(out, cap)

    def __rmul__(self, other) -> "FreeAlgebraElement":
        return self * other

    def bracket(self, other: "FreeAlgebraElement") -> "FreeAlgebraElement":
        return self * other - other * self

    def constant(self):
        return self.terms.get("", Q(0))

    def homogeneous(self, n: int) -> "FreeAlgebraElement":
        return self._new({w: c for w, c in self.terms.items() if len(w) == n})

    def lowest_degree(self) -> int | None:
        return min((len(w) for w in self.terms), default=None)

    def exp(self) -> "FreeAlgebraElement":
        if self.constant():
            raise ValueError("exp needs an element without constant term")
        result = FreeAlgebraElement.one(self.max_degree)
        term = result
        for k in range(1, self.max_degree + 1):
            term = term * self * Q(1, k)
            if not term:
                break
            result = result + term
        return result

    def log(self) -> "FreeAlgebraElement":
        if self.constant() != 1:
            raise ValueError("log needs an element with unit constant term")
        z = self - FreeAlgebraElement.one(self.max_degree)
        result = FreeAlgebraElement({}, self.max_degree)
        power = FreeAlgebraElement.one(self.max_degree)
        for k in range(1, self.max_degree + 1):
            power = power * z
            if not power:
                break
            result = result + power * Q((-1) ** (k + 1), k)
        return result

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, FreeAlgebraElement):
            return NotImplemented
        return not (self - other).terms

    __hash__ = None

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"({c})*{w or '1'}" for w, c in sorted(self.terms.items(), key=lambda t: (len(t[0]), t[0])))

    def to_json(self) -> dict:
        return {w: rational_str(c) for w, c in sorted(self.terms.items(), key=lambda t: (len(t[0]), t[0]))}


def expand_nested(word: str, max_degree: int | None = None) -> FreeAlgebraElement:
    """Free-algebra expansion of [z1, [z2, ... [z_{n-1}, z_n] ...]]."""
    cap = max_degree if max_degree is not None else len(word)
    out = FreeAlgebraElement.gen(word[-1], cap)
    for letter in reversed(word[:-1]):
        out = FreeAlgebraElement.gen(letter, cap).bracket(out)
    return out


@dataclass
class NestedCommutatorCombo:
    """Sum of coeff * [z1, [z2, ... [z_{n-1}, z_n]]] over words z1...zn."""

    terms: list = field(default_factory=list)

    def normalized(self) -> "NestedCommutatorCombo":
        """Orient the innermost pair as [X, Y], merge duplicates, drop zeros."""
        acc: dict = {}
        for c, w in self.terms:
            if len(w) >= 2:
                if w[-2] == w[-1]:
                    continue
                if w[-2:] == "YX":
                    w, c = w[:-2] + "XY", -c
            acc[w] = acc.get(w, 0) + c
        return NestedCommutatorCombo([(c, w) for w, c in sorted(acc.items()) if c])

    def expand(self, max_degree: int | None = None) -> FreeAlgebraElement:
        cap = max_degree if max_degree is not None else max((len(w) for _, w in self.terms), default=1)
        out = FreeAlgebraElement({}, cap)
        for c, w in self.terms:
            out = out + expand_nested(w, cap) * c
        return out

    def evaluate(self, gens: dict, bracket: Callable, zero) -> object:
        """Evaluate in any Lie algebra given generator values and a bracket."""
        total = zero
        for c, w in self.terms:
            val = gens[w[-1]]
            for letter in reversed(w[:-1]):
                val = bracket(gens[letter], val)
            total = total + val * c
        return total

    def __str__(self) -> str:
        parts = []
        for c, w in self.terms:
            parts.append(f"({rational_str(c)})*{bracket_string(w)}")
        return " + ".join(parts) or "0"

    def to_json(self) -> list:
        return [{"coeff": rational_str(c), "word": w, "bracket": bracket_string(w)} for c, w in self.terms]


def bracket_string(word: str) -> str:
    s = word[-1]
    for letter in reversed(word[:-1]):
        s = f"[{letter},{s}]"
    return s


@lru_cache(maxsize=None)
def _zassenhaus(N: int) -> tuple:
    X = FreeAlgebraElement.gen("X", N)
    Y = FreeAlgebraElement.gen("Y", N)
    # e^{-Y} e^{-X} e^{X+Y} = e^{C_2} e^{C_3} ... ; peel factors off the left
    R = (-Y).exp() * (-X).exp() * (X + Y).exp()
    terms = []
    for n in range(2, N + 1):
        low = (R - FreeAlgebraElement.one(N)).lowest_degree()
        if low is not None and low < n:
            raise ArithmeticError(f"unexpected degree-{low} remainder while extracting C_{n}")
        C = R.homogeneous(n)
        terms.append(C)
        R = (-C).exp() * R
    return tuple(terms)


def zassenhaus_terms(N: int) -> list[FreeAlgebraElement]:
    """[C_2, ..., C_N] as free-algebra elements truncated at degree N."""
    if N < 2:
        raise ValueError("N must be at least 2")
    return list(_zassenhaus(N))


def dynkin_project(e: FreeAlgebraElement, n: int) -> NestedCommutatorCombo:
    """Rewrite a homogeneous Lie element of degree n as right-nested commutators."""
    for w in e.terms:
        if len(w) != n:
            raise NotLieElement(f"word {w!r} is not of degree {n}")
    combo = NestedCommutatorCombo([(c * Q(1, n), w) for w, c in sorted(e.terms.items())]).normalized()
    if combo.expand(n) != e:
        raise NotLieElement("Dynkin round trip does not reproduce the element")
    return combo


def zassenhaus_brackets(N: int) -> list[NestedCommutatorCombo]:
    return [dynkin_project(C, n) for n, C in enumerate(zassenhaus_terms(N), start=2)]


# -- the monopole Lie algebra ------------------------------------------------


class MonopoleLieElement:
    """a * X + b * Y + J * f(x; u, u') with f an hbar-series of Fourier polynomials."""

    __slots__ = ("a", "b", "f")

    def __init__(self, a, b, f: HbarSeries):
        self.a = rational(a)
        self.b = rational(b)
        self.f = f

    @property
    def order(self) -> int:
        return self.f.order

    @classmethod
    def X(cls, order: int) -> "MonopoleLieElement":
        return cls(1, 0, HbarSeries([], order, fourier_zero))

    @classmethod
    def Y(cls, order: int) -> "MonopoleLieElement":
        return cls(0, 1, HbarSeries([], order, fourier_zero))

    @classmethod
    def function(cls, f: HbarSeries) -> "MonopoleLieElement":
        return cls(0, 0, f)

    def __add__(self, other: "MonopoleLieElement") -> "MonopoleLieElement":
        return MonopoleLieElement(self.a + other.a, self.b + other.b, self.f + other.f)

    def __mul__(self, c) -> "MonopoleLieElement":
        c = rational(c)
        return MonopoleLieElement(self.a * c, self.b * c, self.f.map(lambda x: x * c))

    __rmul__ = __mul__

    def is_function(self) -> bool:
        return not self.a and not self.b

    def __repr__(self) -> str:
        return f"MonopoleLieElement(a={self.a}, b={self.b}, f={self.f!r})"


def _u_dot_beta_u2() -> FourierPolynomial:
    return bilinear("u", beta_matrix(), "u'")


_D_U = {"u": 1}
_D_U2 = {"u'": 1}


def monopole_bracket(A: MonopoleLieElement, B: MonopoleLieElement) -> MonopoleLieElement:
    """Lie bracket in the algebra spanned by J u.P, J u'.P and J f(x)."""
    N = A.order
    out = HbarSeries([], N, fourier_zero)
    lin = A.a * B.b - A.b * B.a
    if lin:
        out = out + HbarSeries([fourier_zero(), _u_dot_beta_u2().scale(-lin)], N, fourier_zero)

    def derivation(a, b, f: HbarSeries) -> HbarSeries:
        res = f.map(lambda c: c.directional_derivative(_D_U).scale(a) if a else fourier_zero())
        if b:
            res = res + f.map(lambda c: c.directional_derivative(_D_U2).scale(b))
        return res.shift(1)

    if (A.a or A.b) and B.f:
        out = out + derivation(A.a, A.b, B.f)
    if (B.a or B.b) and A.f:
        out = out - derivation(B.a, B.b, A.f)
    return MonopoleLieElement(0, 0, out)


def specialize(combo: NestedCommutatorCombo, order: int) -> MonopoleLieElement:
    """Evaluate a commutator combination at X = J u.P, Y = J u'.P."""
    gens = {"X": MonopoleLieElement.X(order), "Y": MonopoleLieElement.Y(order)}
    zero = MonopoleLieElement(0, 0, HbarSeries([], order, fourier_zero))
    return combo.evaluate(gens, monopole_bracket, zero)


@lru_cache(maxsize=None)
def specialized_terms(N: int) -> tuple:
    """Specialised C_2..C_{N+1} as MonopoleLieElements truncated at hbar**N."""
    return tuple(specialize(c, N) for c in zassenhaus_brackets(N + 1))


@lru_cache(maxsize=None)
def multiplier_exponent(N: int) -> HbarSeries:
    """s(u, u'; x) with m(hbar u, hbar u'; x) = exp(J s), through hbar**N."""
    if N < 1:
        raise ValueError("N must be at least 1")
    total = HbarSeries([], N, fourier_zero)
    for C in specialized_terms(N):
        total = total - C.f
    return total


# -- checks --------------------------------------------------------------------


def free_algebra_residual(N: int) -> FreeAlgebraElement:
    """e^X e^Y e^{C_2} ... e^{C_N} - e^{X+Y}, truncated at degree N."""
    X = FreeAlgebraElement.gen("X", N)
    Y = FreeAlgebraElement.gen("Y", N)
    lhs = X.exp() * Y.exp()
    for combo in zassenhaus_brackets(N):
        lhs = lhs * combo.expand(N).exp()
    return lhs - (X + Y).exp()


def _mat_mul(A: list, B: list) -> list:
    n = len(A)
    return [[sum((A[i][k] * B[k][j] for k in range(n)), Q(0)) for j in range(n)] for i in range(n)]


def _mat_add(A: list, B: list, c=1) -> list:
    return [[a + c * b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def _mat_exp_nilpotent(A: list) -> list:
    n = len(A)
    out = [[Q(int(i == j)) for j in range(n)] for i in range(n)]
    term = out
    for k in range(1, n):
        term = [[x * Q(1, k) for x in row] for row in _mat_mul(term, A)]
        out = _mat_add(out, term)
    return out


class _Matrix:
    """Minimal exact matrix wrapper so commutator combinations can be evaluated on it."""

    __slots__ = ("rows",)

    def __init__(self, rows):
        self.rows = rows

    def __add__(self, other):
        return _Matrix(_mat_add(self.rows, other.rows))

    def __mul__(self, c):
        return _Matrix([[x * c for x in row] for row in self.rows])


def _mat_bracket(A: _Matrix, B: _Matrix) -> _Matrix:
    return _Matrix(_mat_add(_mat_mul(A.rows, B.rows), _mat_mul(B.rows, A.rows), -1))


def random_nilpotent(rng, size: int = 7) -> list:
    """Strictly upper-triangular matrix with small random rational entries."""
    return [[Q(int(rng.integers(-5, 6)), int(rng.integers(1, 5))) if j > i else Q(0)
             for j in range(size)] for i in range(size)]


def nilpotent_matrix_check(X: list, Y: list) -> bool:
    """Exact e^X e^Y prod e^{C_n} == e^{X+Y} for strictly upper-triangular X, Y.

    Products of ``size`` such matrices vanish, so C_2 .. C_{size-1} suffice.
    """
    size = len(X)
    gens = {"X": _Matrix(X), "Y": _Matrix(Y)}
    zero = _Matrix([[Q(0)] * size for _ in range(size)])
    lhs = _mat_mul(_mat_exp_nilpotent(X), _mat_exp_nilpotent(Y))
    for combo in zassenhaus_brackets(size - 1):
        C = combo.evaluate(gens, _mat_bracket, zero)
        lhs = _mat_mul(lhs, _mat_exp_nilpotent(C.rows))
    return lhs == _mat_exp_nilpotent(_mat_add(X, Y))
