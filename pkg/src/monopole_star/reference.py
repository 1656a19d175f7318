"""Stored reference table for the second-order star product.

The table lists the terms of B0, B1, B2 with summed indices, exactly as one
would write them by hand.  ``reference_operators`` expands the index sums and
evaluates the field factors with the symbolic core, giving BidiffOperators
that can be compared term by term with the computed expansion.
"""

from __future__ import annotations

import itertools
import json
from functools import lru_cache
from importlib import resources

from .starproduct import BidiffOperator
from .symbolic.fourier import FourierPolynomial, bilinear
from .symbolic.gaussian import GaussianRational, Q
from .symbolic.radial import RadialFunction, beta, rf_diff

TABLE = "second_order_table.json"
_AXIS = {"p": 0, "q": 3}


def load_table() -> dict:
    return json.loads(resources.files("monopole_star.data").joinpath(TABLE).read_text())


def _factor(name: str, idx: dict) -> RadialFunction:
    if name == "1":
        return RadialFunction.constant(1)
    if name == "beta_ij":
        return beta(idx["i"], idx["j"])
    if name == "beta_ij*beta_kl":
        return beta(idx["i"], idx["j"]) * beta(idx["k"], idx["l"])
    if name == "dq_k beta_ij":
        return rf_diff(beta(idx["i"], idx["j"]), idx["k"])
    raise ValueError(f"unknown factor {name!r}")


def _derivative(symbols: list, idx: dict) -> tuple:
    out = [0] * 6
    for s in symbols:
        kind, letter = s.split("_")
        out[_AXIS[kind] + idx[letter]] += 1
    return tuple(out)


def _letters(term: dict) -> list:
    found = set(term["left"]) | set(term["right"])
    letters = {s.split("_")[1] for s in found}
    for ch in term["factor"]:
        if ch in "ijkl" and term["factor"] != "1":
            letters.add(ch)
    return sorted(letters)


def expand_term(term: dict) -> BidiffOperator:
    coeff = GaussianRational.from_json(term["coeff"])
    letters = _letters(term)
    out: dict = {}
    for values in itertools.product(range(3), repeat=len(letters)):
        idx = dict(zip(letters, values))
        c = _factor(term["factor"], idx)
        if not c:
            continue
        key = (_derivative(term["left"], idx), _derivative(term["right"], idx))
        c = c.scale(coeff)
        out[key] = out[key] + c if key in out else c
    return BidiffOperator(out)


@lru_cache(maxsize=None)
def _reference() -> tuple:
    ops = []
    for terms in load_table()["orders"]:
        op = BidiffOperator()
        for t in terms:
            op = op + expand_term(t)
        ops.append(op)
    return tuple(ops)


def reference_operators() -> list[BidiffOperator]:
    """B0, B1, B2 from the stored table, mu kept symbolic."""
    return list(_reference())


def _u_dbeta_u(direction: str) -> FourierPolynomial:
    """sum_ijk u_i (w_k d_k beta_ij) u'_j with w the ``direction`` block."""
    out = FourierPolynomial.zero()
    for i, j, k in itertools.product(range(3), repeat=3):
        c = rf_diff(beta(i, j), k)
        if c:
            out = out + (FourierPolynomial.var("u", i) * FourierPolynomial.var(direction, k)
                         * FourierPolynomial.from_radial(c) * FourierPolynomial.var("u'", j))
    return out


def specialization_reference() -> dict:
    """Hand-written C_2, C_3 at X = J u.P, Y = J u'.P (function parts) and the exponent through hbar^2.

    C_2 = (hbar/2) u.beta u',  C_3 = -(hbar^2/6) [u.(u.d)beta u' + 2 u.(u'.d)beta u'],
    s = -(hbar/2) u.beta u' + (hbar^2/6) [...].
    """
    ubu = bilinear("u", [[beta(i, j) for j in range(3)] for i in range(3)], "u'")
    bracket = _u_dbeta_u("u") + _u_dbeta_u("u'").scale(2)
    return {
        "C2": {1: ubu.scale(Q(1, 2))},
        "C3": {2: bracket.scale(Q(-1, 6))},
        "s": {1: ubu.scale(Q(-1, 2)), 2: bracket.scale(Q(1, 6))},
    }
