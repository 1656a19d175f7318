"""Double-precision quaternions and the position-dependent imaginary unit.

Quaternions are stored as ``(w, x1, x2, x3)`` with ``w`` the scalar part, and
multiply by the Hamilton rule e_i e_j = -delta_ij + eps_ijk e_k.
"""

from __future__ import annotations

import math
from typing import NamedTuple, Sequence

from .errors import NotPure, ZeroVector

ZERO_EPS = 1e-300
PURE_TOL = 1e-12

Vec3 = Sequence[float]


class Quaternion(NamedTuple):
    w: float
    x1: float
    x2: float
    x3: float

    @classmethod
    def scalar(cls, s: float) -> "Quaternion":
        return cls(float(s), 0.0, 0.0, 0.0)

    @classmethod
    def pure(cls, v: Vec3) -> "Quaternion":
        return cls(0.0, float(v[0]), float(v[1]), float(v[2]))

    @property
    def vector(self) -> tuple[float, float, float]:
        return (self.x1, self.x2, self.x3)

    def __mul__(self, other):
        if isinstance(other, Quaternion):
            return qmul(self, other)
        s = float(other)
        return Quaternion(self.w * s, self.x1 * s, self.x2 * s, self.x3 * s)

    def __rmul__(self, other):
        s = float(other)
        return Quaternion(self.w * s, self.x1 * s, self.x2 * s, self.x3 * s)

    def __add__(self, other: "Quaternion") -> "Quaternion":
        return Quaternion(self.w + other.w, self.x1 + other.x1,
                          self.x2 + other.x2, self.x3 + other.x3)

    def __sub__(self, other: "Quaternion") -> "Quaternion":
        return Quaternion(self.w - other.w, self.x1 - other.x1,
                          self.x2 - other.x2, self.x3 - other.x3)

    def __neg__(self) -> "Quaternion":
        return Quaternion(-self.w, -self.x1, -self.x2, -self.x3)

    def conj(self) -> "Quaternion":
        return conj(self)

    def norm(self) -> float:
        return norm(self)


ONE = Quaternion(1.0, 0.0, 0.0, 0.0)
E1 = Quaternion(0.0, 1.0, 0.0, 0.0)
E2 = Quaternion(0.0, 0.0, 1.0, 0.0)
E3 = Quaternion(0.0, 0.0, 0.0, 1.0)


def qmul(a: Quaternion, b: Quaternion) -> Quaternion:
    """Hamilton product ``a * b``."""
    aw, a1, a2, a3 = a
    bw, b1, b2, b3 = b
    return Quaternion(
        aw * bw - a1 * b1 - a2 * b2 - a3 * b3,
        aw * b1 + a1 * bw + a2 * b3 - a3 * b2,
        aw * b2 + a2 * bw + a3 * b1 - a1 * b3,
        aw * b3 + a3 * bw + a1 * b2 - a2 * b1,
    )


def conj(a: Quaternion) -> Quaternion:
    return Quaternion(a[0], -a[1], -a[2], -a[3])


def norm(a: Quaternion) -> float:
    return math.sqrt(a[0] * a[0] + a[1] * a[1] + a[2] * a[2] + a[3] * a[3])


def vnorm(x: Vec3) -> float:
    return math.sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2])


def unit_radial(x: Vec3) -> Quaternion:
    """The imaginary unit j(x) = (x . e)/|x|."""
    r = vnorm(x)
    if r < ZERO_EPS:
        raise ZeroVector(f"cannot normalise vector {tuple(x)!r}")
    return Quaternion(0.0, x[0] / r, x[1] / r, x[2] / r)


def exp_pure(v: Quaternion) -> Quaternion:
    """Exponential of a purely imaginary quaternion: cos|v| + (v/|v|) sin|v|."""
    if abs(v[0]) > PURE_TOL:
        raise NotPure(f"scalar part {v[0]!r} is not zero")
    theta = math.sqrt(v[1] * v[1] + v[2] * v[2] + v[3] * v[3])
    if theta == 0.0:
        return ONE
    s = math.sin(theta) / theta
    return Quaternion(math.cos(theta), v[1] * s, v[2] * s, v[3] * s)


def complex_project(q: Quaternion, x: Vec3) -> tuple[complex, float]:
    """Project ``q`` onto span{1, j(x)}, identifying j(x) with i.

    Returns the complex number and the norm of the part of ``q`` orthogonal
    to that plane; the residual is zero exactly when ``q`` commutes with j(x).
    """
    j = unit_radial(x)
    re = q[0]
    # scalar part of -j q equals the j-component of q since j is a unit pure quaternion
    im = -qmul(j, q)[0]
    rest = q - Quaternion(re, im * j[1], im * j[2], im * j[3])
    return complex(re, im), norm(rest)
