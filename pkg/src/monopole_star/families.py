"""Named families of test symbols and a small parser for monomial lists.

A family spec is either a registered name (``acceptance``, ``coords``,
``constants``, ``quadratic``) or a comma-separated list of products such as
``"1,p1*q2,q1*r^-1,p2^2"``.  Factors are ``p1..p3``, ``q1..q3``, ``r^-k`` for
|q|^-k, and integer or fractional constants like ``3/2``.
"""

from __future__ import annotations

import re
from itertools import combinations_with_replacement, product

from .symbolic.gaussian import rational
from .symbolic.radial import SymbolFunction

_FACTOR = re.compile(r"^(p[123]|q[123]|r)(?:\^(-?\d+))?$")


def parse_symbol(text: str) -> SymbolFunction:
    out = SymbolFunction.constant(1)
    for raw in text.split("*"):
        tok = raw.strip()
        if not tok:
            raise ValueError(f"empty factor in {text!r}")
        m = _FACTOR.match(tok)
        if m is None:
            try:
                out = out.scale(rational(tok))
            except (ValueError, ZeroDivisionError) as exc:
                raise ValueError(f"cannot parse factor {tok!r}") from exc
            continue
        name, power = m.group(1), m.group(2)
        if name == "r":
            k = -int(power) if power is not None else -1
            if k < 0:
                raise ValueError("only negative powers of r = |q| are supported")
            out = out * SymbolFunction.rinv(k)
            continue
        k = int(power) if power is not None else 1
        if k < 0:
            raise ValueError(f"negative power of {name} is outside the symbol class")
        axis = int(name[1]) - 1
        base = SymbolFunction.p(axis) if name[0] == "p" else SymbolFunction.q(axis)
        out = out * base ** k
    return out


def _coords() -> list[str]:
    return [f"p{i}" for i in (1, 2, 3)] + [f"q{i}" for i in (1, 2, 3)]


def _acceptance() -> list[str]:
    names = ["1"] + _coords()
    names += [f"p{i}*p{j}" for i, j in combinations_with_replacement((1, 2, 3), 2)]
    names += [f"p{i}*q{j}" for i, j in product((1, 2, 3), repeat=2)]
    names += [f"q{i}*q{j}" for i, j in combinations_with_replacement((1, 2, 3), 2)]
    names += ["r^-1"] + [f"q{i}*r^-1" for i in (1, 2, 3)]
    return names


def _quadratic() -> list[str]:
    return ["p1*p2*r^-1", "p3^2*q1*r^-1", "q1*q2*r^-3", "p2*q3*r^-1"]


FAMILIES = {
    "acceptance": _acceptance,
    "coords": _coords,
    "constants": lambda: ["1", "2", "-1/3"],
    "quadratic": _quadratic,
}


def family_names(spec: str) -> list[str]:
    spec = spec.strip()
    if spec in FAMILIES:
        return FAMILIES[spec]()
    names = [s.strip() for s in spec.split(",") if s.strip()]
    if not names:
        raise ValueError("empty family")
    return names


def load_family(spec: str) -> tuple[list[str], list[SymbolFunction]]:
    """(names, symbols) for a registered family or an explicit list."""
    names = family_names(spec)
    return names, [parse_symbol(n) for n in names]
