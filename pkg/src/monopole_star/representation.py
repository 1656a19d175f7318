"""Numerical side of the quaternionic representation of translations.

Conventions (all maps act on H-valued functions of x in R^3, operators on
the left):

* ``W(a)`` multiplies by w(a, x); ``V(a) = exp(a.d) W(a)``, so
  ``(V(a) psi)(x) = w(a, x + a) psi(x + a)``.
* w(a, y) rotates j(y) into j(y - a):  w(a, y) j(y) conj(w(a, y)) = j(y - a).
  Hence ``V(a)`` intertwines multiplication by j: V(a) J = J V(a).
* ``V(a) V(b) = V(a + b) M(a, b)`` with M(a, b) the multiplication by
  m(a, b; x) = conj(w(a + b, x)) w(a, x - b) w(b, x).
* ``V(c)^-1 M(a, b) V(c)`` is multiplication by
  conj(w(c, x)) m(a, b; x - c) w(c, x).
* ``T(u, v) = V(hbar u) exp(J v.x) exp(-J hbar u.v / 2)``, so
  ``(T psi)(x) = w(hbar u, y) exp(j(y) (v.y - hbar u.v / 2)) psi(y)`` with
  y = x + hbar u.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np
from scipy.integrate import quad

from .errors import SingularSegment, ZeroVector
from .quaternion import ONE, Quaternion, complex_project, conj, exp_pure, norm, qmul, unit_radial, vnorm
from .zassenhaus import multiplier_exponent

EPS_COLL = 1e-8
TOL = 1e-10

Wavefunction = Callable[[Sequence[float]], Quaternion]


def _cross(a, b) -> tuple:
    return (a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0])


def _dot(a, b) -> float:
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]


def _add(a, b) -> tuple:
    return (a[0] + b[0], a[1] + b[1], a[2] + b[2])


def _sub(a, b) -> tuple:
    return (a[0] - b[0], a[1] - b[1], a[2] - b[2])


def _scale(s, a) -> tuple:
    return (s * a[0], s * a[1], s * a[2])


def j_exp(x, theta: float) -> Quaternion:
    """exp(j(x) theta)."""
    j = unit_radial(x)
    return exp_pure(Quaternion(0.0, j[1] * theta, j[2] * theta, j[3] * theta))


# -- phases -------------------------------------------------------------------

def w_phase(a, x, eps_coll: float = EPS_COLL) -> Quaternion:
    """cos(alpha/2) + j(a x x) sin(alpha/2), alpha the angle between x and x - a."""
    d = _sub(x, a)
    rx, rd = vnorm(x), vnorm(d)
    if rx == 0.0 or rd == 0.0:
        raise ZeroVector(f"phase undefined: |x| = {rx}, |x - a| = {rd}")
    c = _cross(a, x)
    nc = vnorm(c)
    along = _dot(x, d)
    if nc < eps_coll * vnorm(a) * rx or nc == 0.0:
        if along > 0:
            return ONE
        raise SingularSegment(f"segment from {tuple(x)} to {tuple(d)} passes through the origin")
    # x cross (x - a) = a cross x, so alpha = atan2(|a x x|, x.(x - a))
    half = 0.5 * math.atan2(nc, along)
    s = math.sin(half) / nc
    return Quaternion(math.cos(half), c[0] * s, c[1] * s, c[2] * s)


def w_phase_quadrature(a, x) -> Quaternion:
    """exp(1/2 (a x x).e * int_0^1 ds / |x - s a|^2), integral by adaptive quadrature."""
    integral, _ = quad(lambda s: 1.0 / (_dot(_sub(x, _scale(s, a)), _sub(x, _scale(s, a)))),
                       0.0, 1.0, epsabs=1e-13, epsrel=1e-13, limit=200)
    c = _cross(a, x)
    return exp_pure(Quaternion.pure(_scale(0.5 * integral, c)))


def rep_multiplier(a, b, x, eps_coll: float = EPS_COLL) -> Quaternion:
    """m(a, b; x) = conj(w(a + b, x)) w(a, x - b) w(b, x)."""
    return qmul(qmul(conj(w_phase(_add(a, b), x, eps_coll)), w_phase(a, _sub(x, b), eps_coll)),
                w_phase(b, x, eps_coll))


def commutant_residual(a, b, x) -> float:
    """Distance of m(a, b; x) from span{1, j(x)}."""
    return complex_project(rep_multiplier(a, b, x), x)[1]


def _qdist(p: Quaternion, q: Quaternion) -> float:
    return norm(p - q)


def cocycle_check(a, b, c, x) -> float:
    """|m(a+b, c; x) V(c)^-1 M(a, b) V(c) - m(a, b+c; x) m(b, c; x)| at the point x."""
    wc = w_phase(c, x)
    conjugated = qmul(qmul(conj(wc), rep_multiplier(a, b, _sub(x, c))), wc)
    lhs = qmul(rep_multiplier(_add(a, b), c, x), conjugated)
    rhs = qmul(rep_multiplier(a, _add(b, c), x), rep_multiplier(b, c, x))
    return _qdist(lhs, rhs)


# -- operators on wavefunctions --------------------------------------------------

def apply_V(a, psi: Wavefunction) -> Wavefunction:
    """V(a) psi: x -> w(a, x + a) psi(x + a)."""
    a = tuple(a)

    def out(x):
        y = _add(x, a)
        return qmul(w_phase(a, y), psi(y))

    return out


def apply_V_inverse(c, psi: Wavefunction) -> Wavefunction:
    """V(c)^-1 psi: x -> conj(w(c, x)) psi(x - c)."""
    c = tuple(c)
    return lambda x: qmul(conj(w_phase(c, x)), psi(_sub(x, c)))


def apply_M(a, b, psi: Wavefunction) -> Wavefunction:
    """Multiplication by m(a, b; x)."""
    a, b = tuple(a), tuple(b)
    return lambda x: qmul(rep_multiplier(a, b, x), psi(x))


def apply_j_exp(phase: Callable, psi: Wavefunction) -> Wavefunction:
    """Multiplication by exp(j(x) phase(x))."""
    return lambda x: qmul(j_exp(x, phase(x)), psi(x))


def apply_T(u, v, psi: Wavefunction, hbar: float) -> Wavefunction:
    """T(u, v) psi built from its three factors."""
    if hbar <= 0:
        raise ValueError("hbar must be positive")
    u, v = tuple(u), tuple(v)
    uv = _dot(u, v)
    inner = apply_j_exp(lambda x: _dot(v, x) - 0.5 * hbar * uv, psi)
    return apply_V(_scale(hbar, u), inner)


def apply_composite_multiplier(u, v, u2, v2, psi: Wavefunction, hbar: float) -> Wavefunction:
    """M(hbar u, hbar u') exp(J hbar (u.v' - v.u') / 2) psi."""
    phase = 0.5 * hbar * (_dot(u, v2) - _dot(v, u2))
    return apply_M(_scale(hbar, u), _scale(hbar, u2), apply_j_exp(lambda x: phase, psi))


def gaussian_wavefunction(rng: np.random.Generator) -> Wavefunction:
    """Random H-valued psi(x) = exp(-|x - c|^2 / 2) (A + B x1 + C x2 + D x3)."""
    (centre,) = _uniform(rng, 1)
    coeffs = [Quaternion(*(float(c) for c in rng.normal(size=4))) for _ in range(4)]

    def psi(x):
        env = math.exp(-0.5 * _dot(_sub(x, centre), _sub(x, centre)))
        q = coeffs[0] + coeffs[1] * x[0] + coeffs[2] * x[1] + coeffs[3] * x[2]
        return q * env

    return psi


def weak_rep_check(a, b, psi: Wavefunction, samples: Sequence) -> float:
    """max |V(a)V(b) psi - V(a+b) M(a, b) psi| over the sample points."""
    lhs = apply_V(a, apply_V(b, psi))
    rhs = apply_V(_add(a, b), apply_M(a, b, psi))
    return max((_qdist(lhs(x), rhs(x)) for x in samples), default=0.0)


def T_product_check(u, v, u2, v2, psi: Wavefunction, samples: Sequence, hbar: float) -> float:
    """max |T(w)T(w') psi - T(w + w') M_hbar(w, w') psi| over the sample points."""
    lhs = apply_T(u, v, apply_T(u2, v2, psi, hbar), hbar)
    rhs = apply_T(_add(u, u2), _add(v, v2), apply_composite_multiplier(u, v, u2, v2, psi, hbar), hbar)
    return max((_qdist(lhs(x), rhs(x)) for x in samples), default=0.0)


# -- Zassenhaus cross-check -------------------------------------------------------

def series_multiplier(u, u2, x, hbar: float, N: int) -> complex:
    """exp(i s_N) with s_N = sum_{n<=N} hbar^n s_n(u, u'; x) at mu = hbar/2."""
    s = multiplier_exponent(N)
    total = 0j
    for n in range(1, N + 1):
        total += hbar ** n * s[n].evaluate(x, mu=hbar / 2, u=u, u2=u2)
    return complex(np.exp(1j * total))


def multiplier_crosscheck(u, u2, x, hbar: float, N: int) -> tuple[complex, complex, float]:
    """(exact, series, |exact - series|) for the complexified multiplier."""
    exact, _ = complex_project(rep_multiplier(_scale(hbar, u), _scale(hbar, u2), x), x)
    series = series_multiplier(u, u2, x, hbar, N)
    return exact, series, abs(exact - series)


def fit_slope(hbars: Sequence[float], errors: Sequence[float]) -> float:
    """Least-squares slope of log(error) against log(hbar)."""
    return float(np.polyfit(np.log(hbars), np.log(errors), 1)[0])


# -- integral kernel ------------------------------------------------------------

@dataclass(frozen=True)
class KernelPoint:
    p1: tuple
    q1: tuple
    p2: tuple
    q2: tuple
    p: tuple
    q: tuple
    hbar: float

    def __post_init__(self):
        for name in ("p1", "q1", "p2", "q2", "p", "q"):
            v = tuple(float(c) for c in getattr(self, name))
            if len(v) != 3:
                raise ValueError(f"{name} must have three components")
            object.__setattr__(self, name, v)
        if self.hbar <= 0:
            raise ValueError("hbar must be positive")
        for name, v in (("q", self.q), ("q'", self.q1), ("q''", self.q2), ("q - q' + q''", self.centre)):
            if vnorm(v) == 0.0:
                raise ZeroVector(f"{name} must be nonzero")

    @property
    def centre(self) -> tuple:
        return _add(_sub(self.q, self.q1), self.q2)

    @classmethod
    def from_json(cls, obj: dict) -> "KernelPoint":
        return cls(obj["p'"], obj["q'"], obj["p''"], obj["q''"], obj["p"], obj["q"], float(obj["hbar"]))

    def to_json(self) -> dict:
        return {"p'": list(self.p1), "q'": list(self.q1), "p''": list(self.p2), "q''": list(self.q2),
                "p": list(self.p), "q": list(self.q), "hbar": self.hbar}


def _prefactor(hbar: float) -> float:
    return (math.pi * hbar) ** -6


def moyal_kernel(k: KernelPoint) -> complex:
    """(pi hbar)^-6 exp{-(2i/hbar)[(p-p').(q-q'') - (p-p'').(q-q')]}."""
    phase = _dot(_sub(k.p, k.p1), _sub(k.q, k.q2)) - _dot(_sub(k.p, k.p2), _sub(k.q, k.q1))
    return _prefactor(k.hbar) * complex(np.exp(-2j * phase / k.hbar))


def kernel_multiplier(k: KernelPoint) -> tuple[complex, float]:
    """Complexified m(2(q''-q), 2(q-q'); q-q'+q'') and its commutant residual."""
    q = rep_multiplier(_scale(2.0, _sub(k.q2, k.q)), _scale(2.0, _sub(k.q, k.q1)), k.centre)
    return complex_project(q, k.centre)


def kernel_eval(k: KernelPoint) -> complex:
    """Exact integral kernel of the star product."""
    m, _ = kernel_multiplier(k)
    return moyal_kernel(k) * m


def triple_term(k: KernelPoint) -> float:
    """q.(q' x q'') / |q - q' + q''|^3."""
    return _dot(k.q, _cross(k.q1, k.q2)) / vnorm(k.centre) ** 3


def kernel_approx_eval(k: KernelPoint) -> complex:
    """The truncated kernel with the magnetic exponent -q.(q' x q'')/|q - q' + q''|^3 taken as written (real)."""
    return moyal_kernel(k) * math.exp(-triple_term(k))


def leading_exponent(k: KernelPoint) -> float:
    """-(hbar/2) u.beta(x) u' at mu = hbar/2, hbar u = 2(q''-q), hbar u' = 2(q-q'), x = q-q'+q''."""
    a = _scale(2.0, _sub(k.q2, k.q))
    b = _scale(2.0, _sub(k.q, k.q1))
    x = k.centre
    # a.beta b = mu x.(a x b)/|x|^3, and -(hbar/2)(1/hbar^2)(hbar/2) = -1/4
    return -0.25 * _dot(x, _cross(a, b)) / vnorm(x) ** 3


# -- sampling -------------------------------------------------------------------

MIN_POINT = 0.1
MIN_CROSS = 0.05


def rng_for(seed: int, index: int) -> np.random.Generator:
    """Independent generator for sample ``index``, reproducible from ``seed`` alone."""
    return np.random.default_rng(np.random.SeedSequence([seed, index]))


def admissible(pairs: Sequence) -> bool:
    """Every (shift, point) pair stays away from the origin and from collinearity."""
    for a, x in pairs:
        d = _sub(x, a)
        rx, rd, ra = vnorm(x), vnorm(d), vnorm(a)
        if rx < MIN_POINT or rd < MIN_POINT:
            return False
        if ra and vnorm(_cross(a, x)) < MIN_CROSS * ra * rx:
            return False
    return True


def _uniform(rng, n: int) -> list:
    return [tuple(float(c) for c in rng.uniform(-1.0, 1.0, 3)) for _ in range(n)]


def cocycle_pairs(a, b, c, x) -> list:
    return [(_add(_add(a, b), c), x), (_add(a, b), _sub(x, c)), (c, x),
            (a, _sub(_sub(x, b), c)), (b, _sub(x, c)), (_add(b, c), x)]


def multiplier_pairs(a, b, x) -> list:
    return [(_add(a, b), x), (a, _sub(x, b)), (b, x)]


def sample_cocycle(seed: int, index: int) -> tuple:
    rng = rng_for(seed, index)
    while True:
        a, b, c, x = _uniform(rng, 4)
        if admissible(cocycle_pairs(a, b, c, x)):
            return a, b, c, x


def sample_phase_pair(seed: int, index: int) -> tuple:
    rng = rng_for(seed, index)
    while True:
        a, x = _uniform(rng, 2)
        if admissible([(a, x)]):
            return a, x


def sample_shifts_and_points(rng, shifts: Sequence, n_points: int) -> list:
    """Points y with the multiplier of the two shifts admissible at y."""
    a, b = shifts
    out = []
    while len(out) < n_points:
        (y,) = _uniform(rng, 1)
        if admissible(multiplier_pairs(a, b, y)):
            out.append(_sub(y, _add(a, b)))
    return out


def sample_weakrep(seed: int, index: int, n_points: int = 50) -> tuple:
    rng = rng_for(seed, index)
    while True:
        a, b = _uniform(rng, 2)
        if vnorm(_cross(a, b)) >= MIN_CROSS * vnorm(a) * vnorm(b):
            break
    points = sample_shifts_and_points(rng, (a, b), n_points)
    return a, b, gaussian_wavefunction(rng), points


def sample_T(seed: int, index: int, hbar: float, n_points: int = 10) -> tuple:
    rng = rng_for(seed, index)
    u, v, u2, v2 = _uniform(rng, 4)
    points = sample_shifts_and_points(rng, (_scale(hbar, u), _scale(hbar, u2)), n_points)
    return u, v, u2, v2, gaussian_wavefunction(rng), points


def sample_multiplier(seed: int, index: int) -> tuple:
    """(u, u', x) with |x| in [1, 2] so that hbar |u| / |x| is small for hbar <= 0.1."""
    rng = rng_for(seed, index)
    while True:
        u, u2 = _uniform(rng, 2)
        direction = rng.normal(size=3)
        x = tuple(float(c) for c in direction / np.linalg.norm(direction) * rng.uniform(1.0, 2.0))
        if admissible([(u, x), (u2, x), (_add(u, u2), x)]) and \
                vnorm(_cross(u, u2)) >= MIN_CROSS * vnorm(u) * vnorm(u2):
            return u, u2, x


def sample_kernel_point(seed: int, index: int, hbar: float = 1.0) -> KernelPoint:
    rng = rng_for(seed, index)
    while True:
        p1, q1, p2, q2, p, q = _uniform(rng, 6)
        a, b = _scale(2.0, _sub(q2, q)), _scale(2.0, _sub(q, q1))
        x = _add(_sub(q, q1), q2)
        if min(vnorm(q), vnorm(q1), vnorm(q2)) >= MIN_POINT and admissible(multiplier_pairs(a, b, x)):
            return KernelPoint(p1, q1, p2, q2, p, q, hbar)
