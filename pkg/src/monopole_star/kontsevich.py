"""Second-order Kontsevich product for a variable Poisson matrix on R^6.

Coordinates are ordered (p1, p2, p3, q1, q2, q3).  With the expansion
parameter identified as i*hbar/2,

    f * g = fg + (i hbar/2) P^ab d_a f d_b g
            - (hbar^2/8) P^{a1 b1} P^{a2 b2} d_{a1} d_{a2} f d_{b1} d_{b2} g
            - (hbar^2/12) P^{a1 b1} d_{b1} P^{a2 b2}
                  (d_{a1} d_{a2} f d_{b2} g - d_{a2} f d_{a1} d_{b2} g)
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Sequence

from .starproduct import DerivativeCache, star, symbol_zero
from .symbolic.gaussian import I, Q
from .symbolic.hbar import HbarSeries
from .symbolic.radial import SymbolFunction, beta

DIM = 6
COORDS = ("p1", "p2", "p3", "q1", "q2", "q3")


def unit_index(*axes: int) -> tuple:
    idx = [0] * DIM
    for a in axes:
        idx[a] += 1
    return tuple(idx)


def diff_coord(f: SymbolFunction, a: int) -> SymbolFunction:
    return f.diff_p(a) if a < 3 else f.diff_q(a - 3)


class PoissonMatrix:
    """Antisymmetric 6x6 matrix of symbols P^{ab}."""

    def __init__(self, entries: Sequence[Sequence[SymbolFunction]]):
        if len(entries) != DIM or any(len(row) != DIM for row in entries):
            raise ValueError("only the 6-dimensional phase space is supported")
        self.entries = [[SymbolFunction.zero() + e for e in row] for row in entries]
        for a, b in itertools.product(range(DIM), repeat=2):
            if not (self.entries[a][b] + self.entries[b][a]).is_zero():
                raise ValueError(f"entries ({a}, {b}) and ({b}, {a}) are not antisymmetric")
        # d_c P^{ab}, computed once
        self.derivs = [[[diff_coord(self.entries[a][b], c) for c in range(DIM)]
                        for b in range(DIM)] for a in range(DIM)]

    def __getitem__(self, ab: tuple) -> SymbolFunction:
        a, b = ab
        return self.entries[a][b]

    def nonzero(self) -> list:
        return [(a, b) for a, b in itertools.product(range(DIM), repeat=2) if self.entries[a][b]]

    def jacobiator(self, a: int, b: int, c: int) -> SymbolFunction:
        """P^{ad} d_d P^{bc} + P^{bd} d_d P^{ca} + P^{cd} d_d P^{ab}."""
        out = SymbolFunction.zero()
        for d in range(DIM):
            out = out + self.entries[a][d] * self.derivs[b][c][d]
            out = out + self.entries[b][d] * self.derivs[c][a][d]
            out = out + self.entries[c][d] * self.derivs[a][b][d]
        return out

    def jacobi_residuals(self) -> dict:
        out = {}
        for a, b, c in itertools.combinations(range(DIM), 3):
            r = self.jacobiator(a, b, c)
            if r:
                out[(a, b, c)] = r
        return out


def block_poisson() -> PoissonMatrix:
    """[[beta(q), -I3], [I3, 0]] for the monopole field."""
    one = SymbolFunction.constant(1)
    rows = [[SymbolFunction.zero() for _ in range(DIM)] for _ in range(DIM)]
    for i in range(3):
        for j in range(3):
            rows[i][j] = SymbolFunction.from_radial(beta(i, j))
        rows[i][3 + i] = -one
        rows[3 + i][i] = one
    return PoissonMatrix(rows)


def constant_symplectic() -> PoissonMatrix:
    """The block matrix with beta = 0 (canonical Poisson structure)."""
    one = SymbolFunction.constant(1)
    rows = [[SymbolFunction.zero() for _ in range(DIM)] for _ in range(DIM)]
    for i in range(3):
        rows[i][3 + i] = -one
        rows[3 + i][i] = one
    return PoissonMatrix(rows)


def kontsevich_star2(f, g, P: PoissonMatrix) -> HbarSeries:
    """Second-order Kontsevich product f * g as an hbar-series of order 2."""
    fc = f if isinstance(f, DerivativeCache) else DerivativeCache(f)
    gc = g if isinstance(g, DerivativeCache) else DerivativeCache(g)
    nz = P.nonzero()

    b0 = fc.base * gc.base

    b1 = SymbolFunction.zero()
    for a, b in nz:
        b1 = b1 + P[a, b] * fc[unit_index(a)] * gc[unit_index(b)]
    b1 = b1.scale(I * Q(1, 2))

    pp = SymbolFunction.zero()
    for (a1, b1_), (a2, b2) in itertools.product(nz, repeat=2):
        df = fc[unit_index(a1, a2)]
        dg = gc[unit_index(b1_, b2)]
        if df and dg:
            pp = pp + P[a1, b1_] * P[a2, b2] * df * dg

    pdp = SymbolFunction.zero()
    for a1, b1_ in nz:
        for a2, b2 in itertools.product(range(DIM), repeat=2):
            dP = P.derivs[a2][b2][b1_]
            if not dP:
                continue
            inner = (fc[unit_index(a1, a2)] * gc[unit_index(b2)]
                     - fc[unit_index(a2)] * gc[unit_index(a1, b2)])
            if inner:
                pdp = pdp + P[a1, b1_] * dP * inner

    b2 = pp.scale(Q(-1, 8)) + pdp.scale(Q(-1, 12))
    return HbarSeries([b0, b1, b2], 2, symbol_zero)


def contract(f, g, P: PoissonMatrix) -> SymbolFunction:
    """P^ab d_a f d_b g, computed directly from the matrix entries."""
    out = SymbolFunction.zero()
    for a, b in P.nonzero():
        out = out + P[a, b] * diff_coord(f, a) * diff_coord(g, b)
    return out


@dataclass
class EquivalenceReport:
    family: list
    pairs_checked: int = 0
    failures: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_json(self, max_failures: int = 20) -> dict:
        return {
            "family": self.family,
            "pairs_checked": self.pairs_checked,
            "n_failures": len(self.failures),
            "failures": self.failures[:max_failures],
            "pass": self.passed,
        }


def check_equivalence(family: Sequence[SymbolFunction], names: Sequence[str] | None = None) -> EquivalenceReport:
    """Compare the Kontsevich product with the differential star product on all ordered pairs."""
    family = list(family)
    names = list(names) if names is not None else [str(f) for f in family]
    P = block_poisson()
    caches = [DerivativeCache(f) for f in family]
    report = EquivalenceReport(family=names)
    for a, b in itertools.product(range(len(family)), repeat=2):
        diff = kontsevich_star2(caches[a], caches[b], P) - star(caches[a], caches[b], 2)
        report.pairs_checked += 1
        for n, r in enumerate(diff.coeffs):
            if r:
                report.failures.append({
                    "pair": [names[a], names[b]],
                    "order": n,
                    "mu_degrees": r.mu_degrees(),
                    "residual": r.to_json(),
                })
    return report
