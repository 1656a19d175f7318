"""Exact arithmetic for the radial function class and its extensions."""

from .fourier import FourierPolynomial, degree_cap, taylor_shift, taylor_shift_series
from .gaussian import GaussianRational, I, Q
from .hbar import HbarSeries
from .radial import RadialFunction, SymbolFunction, beta, beta_matrix, parity_split_is_zero, rf_diff

__all__ = [
    "FourierPolynomial",
    "GaussianRational",
    "HbarSeries",
    "I",
    "Q",
    "RadialFunction",
    "SymbolFunction",
    "beta",
    "beta_matrix",
    "degree_cap",
    "parity_split_is_zero",
    "rf_diff",
    "taylor_shift",
    "taylor_shift_series",
]
