"""Differential form of the monopole star product.

The bidifferential operators B_n of f * g = sum_n hbar^n B_n(f, g) are built in
three steps from the composite multiplier

    m(hbar u, hbar u'; x) * exp{i hbar (u.v' - v.u') / 2},   m = exp(i s)

1. expand in hbar with the Zassenhaus exponent s, the quaternion unit j(x)
   already replaced by i;
2. substitute x = q + hbar (u + u')/2 and re-expand about q;
3. replace u, v, u', v' by -i d_p (left), -i d_q (left), -i d_p (right),
   -i d_q (right).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence

from .symbolic.fourier import FourierPolynomial, dot, fourier_zero, taylor_shift_series
from .symbolic.gaussian import I, ONE, Q
from .symbolic.hbar import HbarSeries
from .symbolic.radial import RadialFunction, SymbolFunction, beta
from .zassenhaus import multiplier_exponent

ZERO6 = (0, 0, 0, 0, 0, 0)
_MINUS_I_POWERS = (ONE, -I, -ONE, I)


def symbol_zero() -> SymbolFunction:
    return SymbolFunction.zero()


class BidiffOperator:
    """Sum of c(q) * (d_p^a d_q^g  (x)  d_p^a' d_q^g').

    Keys are pairs of 6-tuples (left, right) of derivative orders ordered as
    (p1, p2, p3, q1, q2, q3); values are nonzero RadialFunctions.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: dict | None = None):
        self.terms = {k: v for k, v in (terms or {}).items() if v}

    @classmethod
    def identity(cls) -> "BidiffOperator":
        return cls({(ZERO6, ZERO6): RadialFunction.constant(1)})

    def __add__(self, other: "BidiffOperator") -> "BidiffOperator":
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out[k] + c if k in out else c
        return BidiffOperator(out)

    def __neg__(self) -> "BidiffOperator":
        return BidiffOperator({k: -c for k, c in self.terms.items()})

    def __sub__(self, other: "BidiffOperator") -> "BidiffOperator":
        return self + (-other)

    def scale(self, c) -> "BidiffOperator":
        return BidiffOperator({k: v.scale(c) for k, v in self.terms.items()})

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, BidiffOperator):
            return NotImplemented
        return (self - other).is_zero()

    __hash__ = None

    def __len__(self) -> int:
        return len(self.terms)

    def drop_mu(self) -> "BidiffOperator":
        return BidiffOperator({k: c.drop_mu() for k, c in self.terms.items()})

    def transpose(self) -> "BidiffOperator":
        """The operator (f, g) -> B(g, f)."""
        return BidiffOperator({(r, l): c for (l, r), c in self.terms.items()})

    def max_orders(self) -> dict:
        """Largest number of p- and q-derivatives falling on each argument."""
        out = {"left_p": 0, "left_q": 0, "right_p": 0, "right_q": 0}
        for l, r in self.terms:
            out["left_p"] = max(out["left_p"], sum(l[:3]))
            out["left_q"] = max(out["left_q"], sum(l[3:]))
            out["right_p"] = max(out["right_p"], sum(r[:3]))
            out["right_q"] = max(out["right_q"], sum(r[3:]))
        return out

    def apply(self, f, g) -> SymbolFunction:
        """B(f, g) for SymbolFunctions or DerivativeCaches."""
        fc = f if isinstance(f, DerivativeCache) else DerivativeCache(f)
        gc = g if isinstance(g, DerivativeCache) else DerivativeCache(g)
        by_left: dict = {}
        for (l, r), c in self.terms.items():
            by_left.setdefault(l, []).append((r, c))
        total: dict = {}
        for l, rights in by_left.items():
            df = fc[l]
            if not df:
                continue
            inner = None
            for r, c in rights:
                dg = gc[r]
                if not dg:
                    continue
                piece = c * dg
                inner = piece if inner is None else inner + piece
            if inner:
                _merge(total, (df * inner).terms)
        return SymbolFunction._from_raw(total)

    def to_json(self) -> list:
        out = []
        for (l, r), c in sorted(self.terms.items()):
            out.append({
                "left": {"p": list(l[:3]), "q": list(l[3:])},
                "right": {"p": list(r[:3]), "q": list(r[3:])},
                "coeff": c.to_json(),
            })
        return out

    @classmethod
    def from_json(cls, data: Iterable[dict]) -> "BidiffOperator":
        out: dict = {}
        for t in data:
            l = tuple(t["left"]["p"]) + tuple(t["left"]["q"])
            r = tuple(t["right"]["p"]) + tuple(t["right"]["q"])
            c = RadialFunction.from_json(t["coeff"])
            out[(l, r)] = out[(l, r)] + c if (l, r) in out else c
        return cls(out)

    def pretty(self) -> str:
        lines = []
        for (l, r), c in sorted(self.terms.items()):
            lines.append(f"[{c}] {_dstr(l)}f {_dstr(r)}g")
        return "\n".join(lines) or "0"

    def __repr__(self) -> str:
        return f"BidiffOperator({len(self.terms)} terms)"


def _dstr(idx: tuple) -> str:
    names = ("p1", "p2", "p3", "q1", "q2", "q3")
    parts = []
    for n, k in zip(names, idx):
        parts.extend([f"d{n}"] * k)
    return "".join(p + " " for p in parts)


def _merge(acc: dict, terms: dict) -> None:
    for k, c in terms.items():
        if k in acc:
            s = acc[k] + c
            if s:
                acc[k] = s
            else:
                del acc[k]
        else:
            acc[k] = c


class DerivativeCache:
    """Lazily memoised partial derivatives d_p^a d_q^g of a fixed symbol."""

    __slots__ = ("base", "_cache")

    def __init__(self, f: SymbolFunction):
        self.base = f
        self._cache = {ZERO6: f}

    def __getitem__(self, index: tuple) -> SymbolFunction:
        hit = self._cache.get(index)
        if hit is not None:
            return hit
        # peel one derivative off the last nonzero slot and recurse
        for axis in range(5, -1, -1):
            if index[axis]:
                break
        parent = index[:axis] + (index[axis] - 1,) + index[axis + 1:]
        pf = self[parent]
        if not pf:
            out = pf
        elif axis < 3:
            out = pf.diff_p(axis)
        else:
            out = pf.diff_q(axis - 3)
        self._cache[index] = out
        return out


# -- step 1 and 2: the multiplier expansion ------------------------------------


def moyal_phase() -> FourierPolynomial:
    """(u.v' - v.u') / 2."""
    return (dot("u", "v'") - dot("v", "u'")).scale(Q(1, 2))


@lru_cache(maxsize=None)
def complexified_multiplier(N: int) -> HbarSeries:
    """m(hbar u, hbar u'; x) exp{i hbar (u.v' - v.u')/2} with j(x) -> i, unshifted."""
    if N == 0:
        return HbarSeries.constant(FourierPolynomial.constant(1), 0, fourier_zero)
    s = multiplier_exponent(N)
    phase = HbarSeries([fourier_zero(), moyal_phase()], N, fourier_zero)
    exponent = (s + phase).map(lambda c: c.scale(I))
    return exponent.exp()


@lru_cache(maxsize=None)
def multiplier_full_expansion(N: int) -> HbarSeries:
    """Complexified composite multiplier with x = q + hbar (u + u')/2, through hbar**N."""
    if N < 0:
        raise ValueError("order must be non-negative")
    return taylor_shift_series(complexified_multiplier(N))


# -- step 3: Fourier variables -> derivatives ----------------------------------


def fourier_to_bidiff(poly: FourierPolynomial) -> BidiffOperator:
    """Replace u, v -> -i d_p, -i d_q on f and u', v' -> -i d_p, -i d_q on g."""
    acc: dict = {}
    for (mu, m, al, e), c in poly.terms.items():
        left = e[0:6]
        right = e[6:12]
        factor = _MINUS_I_POWERS[sum(e) % 4]
        acc.setdefault((left, right), {})[(mu, m, al, ())] = c * factor
    return BidiffOperator({k: RadialFunction._from_raw(v) for k, v in acc.items()})


def to_bidiff(expansion: HbarSeries) -> list[BidiffOperator]:
    return [fourier_to_bidiff(c) for c in expansion.coeffs]


@lru_cache(maxsize=None)
def _operators(N: int) -> tuple:
    return tuple(to_bidiff(multiplier_full_expansion(N)))


def bidiff_operators(N: int) -> list[BidiffOperator]:
    """[B_0, ..., B_N] with the coupling mu kept symbolic."""
    ops = _operators(N)
    return list(ops)


def bind_mu(ops: Sequence[BidiffOperator], order: int | None = None) -> list[BidiffOperator]:
    """Substitute mu = hbar/2: a mu**s term of B_n moves to order n + s with weight 2**-s."""
    N = len(ops) - 1 if order is None else order
    out = [BidiffOperator() for _ in range(N + 1)]
    for n, op in enumerate(ops):
        for key, c in op.terms.items():
            for (s, m, al, e), v in c.terms.items():
                if n + s > N:
                    continue
                piece = BidiffOperator({key: RadialFunction._from_raw({(0, m, al, e): v * Q(1, 2 ** s)})})
                out[n + s] = out[n + s] + piece
    return out


# -- the star product ------------------------------------------------------------


def star(f: SymbolFunction, g: SymbolFunction, N: int) -> HbarSeries:
    """f * g through hbar**N."""
    ops = _operators(N)
    fc, gc = _cached(f), _cached(g)
    return HbarSeries([op.apply(fc, gc) for op in ops], N, symbol_zero)


def _cached(f):
    return f if isinstance(f, DerivativeCache) else DerivativeCache(f)


def star_series(F: HbarSeries, G: HbarSeries, N: int) -> HbarSeries:
    """Bilinear extension of the star product to hbar-series of symbols."""
    out = _star_cached([_cached(c) for c in F.coeffs], [_cached(c) for c in G.coeffs], N)
    return HbarSeries([SymbolFunction._from_raw(t) for t in out], N, symbol_zero)


def as_series(f: SymbolFunction, N: int) -> HbarSeries:
    return HbarSeries([f], N, symbol_zero)


def poisson_bracket(f: SymbolFunction, g: SymbolFunction) -> SymbolFunction:
    """{f, g} = d_q f . d_p g - d_p f . d_q g + beta_ij d_p_i f d_p_j g."""
    out = SymbolFunction.zero()
    for i in range(3):
        out = out + f.diff_q(i) * g.diff_p(i) - f.diff_p(i) * g.diff_q(i)
    for i, j in itertools.permutations(range(3), 2):
        out = out + beta(i, j) * f.diff_p(i) * g.diff_p(j)
    return out


# -- associativity ---------------------------------------------------------------


@dataclass
class TripleResidual:
    names: tuple
    order: int
    mu_degrees: list
    n_terms: int
    residual: SymbolFunction

    def to_json(self) -> dict:
        return {
            "triple": list(self.names),
            "order": self.order,
            "mu_degrees": self.mu_degrees,
            "n_terms": self.n_terms,
            "residual": self.residual.to_json(),
        }


@dataclass
class AssociativityReport:
    order: int
    family: list
    triples_checked: int = 0
    failures: list = field(default_factory=list)
    max_terms_per_order: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_json(self, max_failures: int = 20) -> dict:
        return {
            "order": self.order,
            "family": self.family,
            "triples_checked": self.triples_checked,
            "n_failures": len(self.failures),
            "failures": [f.to_json() for f in self.failures[:max_failures]],
            "max_residual_terms_per_order": self.max_terms_per_order,
            "pass": self.passed,
        }


def associator(f: SymbolFunction, g: SymbolFunction, h: SymbolFunction, N: int) -> HbarSeries:
    """(f * g) * h - f * (g * h) through hbar**N."""
    fs, gs, hs = as_series(f, N), as_series(g, N), as_series(h, N)
    return star_series(star_series(fs, gs, N), hs, N) - star_series(fs, star_series(gs, hs, N), N)


def check_associativity(N: int, family: Sequence, names: Sequence[str] | None = None,
                        operators: Sequence[BidiffOperator] | None = None) -> AssociativityReport:
    """Exact associator of every ordered triple drawn from ``family``.

    ``operators`` replaces the computed [B_0, ..., B_N], e.g. to confirm that a
    perturbed product is detected as non-associative.
    """
    if N < 0:
        raise ValueError("order must be non-negative")
    ops = tuple(operators) if operators is not None else _operators(N)
    family = list(family)
    names = list(names) if names is not None else [str(f) for f in family]
    report = AssociativityReport(order=N, family=names, max_terms_per_order=[0] * (N + 1))
    caches = [DerivativeCache(f) for f in family]
    # pair products are shared between the two bracketings
    pairs = {}
    for a, b in itertools.product(range(len(family)), repeat=2):
        pairs[a, b] = _star_cached([caches[a]], [caches[b]], N, ops)
    pair_caches = {k: [DerivativeCache(SymbolFunction._from_raw(t)) for t in v] for k, v in pairs.items()}

    for a, b, c in itertools.product(range(len(family)), repeat=3):
        left = _star_cached(pair_caches[a, b], [caches[c]], N, ops)
        right = _star_cached([caches[a]], pair_caches[b, c], N, ops)
        report.triples_checked += 1
        for n in range(N + 1):
            res = _difference(left[n], right[n])
            if res:
                report.max_terms_per_order[n] = max(report.max_terms_per_order[n], len(res))
                residual = SymbolFunction._from_raw(res)
                report.failures.append(TripleResidual(
                    (names[a], names[b], names[c]), n, residual.mu_degrees(), len(res), residual))
    return report


def _star_cached(F: list, G: list, N: int, ops: Sequence[BidiffOperator] | None = None) -> list:
    ops = ops if ops is not None else _operators(N)
    out: list = [dict() for _ in range(N + 1)]
    for a, fa in enumerate(F[: N + 1]):
        if not fa.base:
            continue
        for b, gb in enumerate(G[: N + 1 - a]):
            if not gb.base:
                continue
            for n in range(N + 1 - a - b):
                _merge(out[a + b + n], ops[n].apply(fa, gb).terms)
    return out


def _difference(x: dict, y: dict) -> dict:
    out = dict(x)
    for k, c in y.items():
        _merge(out, {k: -c})
    return out

