"""Polynomials in the Fourier variables u, v, u', v' with radial coefficients."""

from __future__ import annotations

from contextlib import contextmanager

from ..errors import DegreeCapExceeded
from .gaussian import ONE, Q
from .hbar import HbarSeries
from .radial import RadialFunction
from .terms import TermPoly

# offsets of the four 3-vectors inside the 12-exponent key
U, V, U2, V2 = 0, 3, 6, 9
BLOCKS = {"u": U, "v": V, "u'": U2, "v'": V2}

_degree_cap = 24


def get_degree_cap() -> int:
    return _degree_cap


@contextmanager
def degree_cap(n: int):
    """Temporarily change the maximal total Fourier degree of intermediates."""
    global _degree_cap
    old, _degree_cap = _degree_cap, n
    try:
        yield
    finally:
        _degree_cap = old


class FourierPolynomial(TermPoly):
    """Sum of RadialFunction(q) * u^a v^g u'^a' v'^g'."""

    __slots__ = ()
    EXTRA_LEN = 12
    EXTRA_NAMES = (("u", U), ("v", V), ("u'", U2), ("v'", V2))

    @classmethod
    def var(cls, block: str, axis: int) -> "FourierPolynomial":
        e = [0] * 12
        e[BLOCKS[block] + axis] = 1
        return cls._from_raw({(0, 0, (0, 0, 0), tuple(e)): ONE})

    @classmethod
    def from_radial(cls, f: RadialFunction) -> "FourierPolynomial":
        z = (0,) * 12
        return cls._from_raw({(mu, m, al, z): c for (mu, m, al, _), c in f.terms.items()})

    def _check_degree(self) -> None:
        cap = _degree_cap
        for k in self.terms:
            if sum(k[3]) > cap:
                raise DegreeCapExceeded(f"Fourier degree {sum(k[3])} exceeds cap {cap}")

    def degree(self) -> int:
        return max((sum(k[3]) for k in self.terms), default=0)

    def grouped(self) -> dict:
        """Map Fourier exponent tuple -> RadialFunction coefficient."""
        out: dict = {}
        for (mu, m, al, e), c in self.terms.items():
            out.setdefault(e, {})[(mu, m, al, ())] = c
        return {e: RadialFunction._from_raw(t) for e, t in out.items()}

    def coefficient(self, **exponents) -> RadialFunction:
        e = [0] * 12
        for name, idx in (("u", U), ("v", V), ("u2", U2), ("v2", V2)):
            e[idx:idx + 3] = exponents.get(name, (0, 0, 0))
        return self.grouped().get(tuple(e), RadialFunction.zero())

    def directional_derivative(self, block_weights: dict) -> "FourierPolynomial":
        """Apply sum_i (sum_B w_B * B_i) d/dq^i, e.g. ((u + u')/2) . d_q."""
        out = FourierPolynomial.zero()
        for axis in range(3):
            d = self.diff_q(axis)
            if not d:
                continue
            for block, w in block_weights.items():
                out = out + (FourierPolynomial.var(block, axis) * d).scale(w)
        return out

    def set_equal(self, src: str, dst: str) -> "FourierPolynomial":
        """Substitute the ``src`` block of variables by the ``dst`` block."""
        s, d = BLOCKS[src], BLOCKS[dst]
        out: dict = {}
        for (mu, m, al, e), c in self.terms.items():
            e2 = list(e)
            for i in range(3):
                e2[d + i] += e2[s + i]
                e2[s + i] = 0
            k = (mu, m, al, tuple(e2))
            out[k] = out.get(k, 0) + c
        return FourierPolynomial._from_raw(out)

    def evaluate(self, q, mu: float = 0.0, u=(0, 0, 0), v=(0, 0, 0), u2=(0, 0, 0), v2=(0, 0, 0)) -> complex:
        return self._eval_terms(q, mu, tuple(u) + tuple(v) + tuple(u2) + tuple(v2))

    def _extra_factors(self, e):
        names = [f"{b}{i + 1}" for b in ("u", "v", "u'", "v'") for i in range(3)]
        return [n if k == 1 else f"{n}^{k}" for n, k in zip(names, e) if k]


def fourier_zero() -> FourierPolynomial:
    return FourierPolynomial.zero()


def dot(block_a: str, block_b: str) -> FourierPolynomial:
    """a . b for two blocks of Fourier variables."""
    out = FourierPolynomial.zero()
    for i in range(3):
        out = out + FourierPolynomial.var(block_a, i) * FourierPolynomial.var(block_b, i)
    return out


def bilinear(block_a: str, matrix, block_b: str) -> FourierPolynomial:
    """a . M b with a 3x3 matrix of radial functions."""
    out = FourierPolynomial.zero()
    for i in range(3):
        for j in range(3):
            if matrix[i][j]:
                coeff = FourierPolynomial.from_radial(matrix[i][j])
                out = out + FourierPolynomial.var(block_a, i) * coeff * FourierPolynomial.var(block_b, j)
    return out


SHIFT = {"u": Q(1, 2), "u'": Q(1, 2)}


def taylor_shift_series(series: HbarSeries, weights: dict = SHIFT) -> HbarSeries:
    """Replace q by q + hbar * w(u, u') inside every coefficient, re-expanded in hbar.

    With D = (sum_B w_B B) . d_q, the shifted series is exp(hbar D) applied
    coefficientwise, truncated at the series order.
    """
    N = series.order
    out = list(series.coeffs)
    for n, c in enumerate(series.coeffs):
        term = c
        for k in range(1, N - n + 1):
            term = term.directional_derivative(weights).scale(Q(1, k))
            if not term:
                break
            out[n + k] = out[n + k] + term
    return HbarSeries(out, N, fourier_zero)


def taylor_shift(f: RadialFunction, order: int, weights: dict = SHIFT) -> HbarSeries:
    """Taylor expansion of f(q + hbar*(u + u')/2) about q through hbar**order."""
    base = HbarSeries([FourierPolynomial.from_radial(f)], order, fourier_zero)
    return taylor_shift_series(base, weights)
