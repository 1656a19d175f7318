import cmath
import math

import numpy as np
import pytest

from monopole_star import representation as rep
from monopole_star.errors import SingularSegment, ZeroVector
from monopole_star.quaternion import ONE, Quaternion, complex_project, conj, norm, qmul, unit_radial


def close(p, q, tol=1e-12):
    return norm(p - q) < tol


# -- phases -------------------------------------------------------------------------


def test_w_phase_right_angle():
    # [DERIVED by hand] a x x = e3 and the angle between (0,1,0) and (-1,1,0) is pi/4
    w = rep.w_phase((1, 0, 0), (0, 1, 0))
    assert close(w, Quaternion(math.cos(math.pi / 8), 0, 0, math.sin(math.pi / 8)), 1e-15)
    assert close(w, rep.w_phase_quadrature((1, 0, 0), (0, 1, 0)), 1e-10)


def test_w_phase_collinear_and_singular():
    x = (0.4, -0.2, 0.9)
    assert rep.w_phase(tuple(0.3 * c for c in x), x) == ONE
    assert rep.w_phase((0, 0, 0), x) == ONE
    with pytest.raises(SingularSegment):
        rep.w_phase(tuple(2 * c for c in x), x)
    with pytest.raises(ZeroVector):
        rep.w_phase(x, x)
    with pytest.raises(ZeroVector):
        rep.w_phase((1, 0, 0), (0, 0, 0))


def test_w_phase_against_quadrature():
    for i in range(100):
        a, x = rep.sample_phase_pair(0, i)
        w = rep.w_phase(a, x)
        assert abs(norm(w) - 1) < 1e-12
        assert close(w, rep.w_phase_quadrature(a, x), 1e-10)


def test_w_phase_rotates_radial_unit():
    """w(a, y) j(y) conj(w(a, y)) = j(y - a); this is what lets V(a) commute with J."""
    for i in range(20):
        a, x = rep.sample_phase_pair(1, i)
        y = tuple(s + t for s, t in zip(x, a))
        w = rep.w_phase(a, y)
        assert close(qmul(qmul(w, unit_radial(y)), conj(w)), unit_radial(x))


# -- multiplier and cocycle ------------------------------------------------------------


def test_multiplier_trivial_cases():
    a, b, c, x = rep.sample_cocycle(0, 3)
    assert close(rep.rep_multiplier(a, (0, 0, 0), x), ONE)
    assert close(rep.rep_multiplier((0, 0, 0), b, x), ONE)


def test_multiplier_commutes_with_j():
    for i in range(100):
        a, b, _, x = rep.sample_cocycle(0, i)
        m = rep.rep_multiplier(a, b, x)
        assert abs(norm(m) - 1) < 1e-12
        assert rep.commutant_residual(a, b, x) < 1e-10


def test_cocycle():
    a, b, _, x = rep.sample_cocycle(2, 0)
    assert rep.cocycle_check(a, b, (0, 0, 0), x) < 1e-15
    assert rep.cocycle_check((0, 0, 0), (0, 0, 0), (0, 0, 0), x) == 0
    worst = max(rep.cocycle_check(*rep.sample_cocycle(0, i)) for i in range(100))
    assert worst < 1e-10


def test_cocycle_needs_the_conjugation():
    """Dropping V(c) from V(c)^-1 M(a, b) V(c) gives a visibly wrong identity."""
    a, b, c, x = rep.sample_cocycle(0, 1)
    lhs = qmul(rep.rep_multiplier(tuple(s + t for s, t in zip(a, b)), c, x),
               rep.rep_multiplier(a, b, tuple(s - t for s, t in zip(x, c))))
    rhs = qmul(rep.rep_multiplier(a, tuple(s + t for s, t in zip(b, c)), x), rep.rep_multiplier(b, c, x))
    assert norm(lhs - rhs) > 1e-6


def test_sampling_is_reproducible():
    assert rep.sample_cocycle(7, 3) == rep.sample_cocycle(7, 3)
    assert rep.sample_cocycle(7, 3) != rep.sample_cocycle(7, 4)


# -- operators ----------------------------------------------------------------------


def psi0():
    return rep.gaussian_wavefunction(np.random.default_rng(0))


def test_apply_V_identity_and_norm():
    psi = psi0()
    x = (0.3, 0.5, -0.2)
    assert close(rep.apply_V((0, 0, 0), psi)(x), psi(x))
    a = (0.2, -0.4, 0.1)
    y = tuple(s + t for s, t in zip(x, a))
    assert abs(norm(rep.apply_V(a, psi)(x)) - norm(psi(y))) < 1e-12


def test_V_then_inverse_shift_is_multiplier():
    psi = psi0()
    a = (0.3, -0.5, 0.2)
    minus_a = tuple(-c for c in a)
    lhs = rep.apply_V(a, rep.apply_V(minus_a, psi))
    for x in ((0.9, 0.4, -0.6), (-0.7, 0.8, 0.5)):
        # V(a)V(-a) = V(0) M(a, -a) = M(a, -a)
        assert close(lhs(x), qmul(rep.rep_multiplier(a, minus_a, x), psi(x)), 1e-10)
    inv = rep.apply_V_inverse(a, rep.apply_V(a, psi))
    assert close(inv((0.9, 0.4, -0.6)), psi((0.9, 0.4, -0.6)))


def test_weak_representation():
    for i in range(100):
        a, b, psi, pts = rep.sample_weakrep(0, i)
        assert rep.weak_rep_check(a, b, psi, pts) < 1e-10
    a, b, psi, pts = rep.sample_weakrep(0, 0)
    assert rep.weak_rep_check(a, (0, 0, 0), psi, pts) < 1e-15


def test_weak_representation_fails_with_wrong_order():
    """V(a) with the phase taken at x instead of x + a does not compose this way."""
    a, b, psi, pts = rep.sample_weakrep(0, 5)

    def wrong_V(s, f):
        return lambda x: qmul(rep.w_phase(s, x), f(tuple(p + q for p, q in zip(x, s))))

    lhs = wrong_V(a, wrong_V(b, psi))
    rhs = wrong_V(tuple(p + q for p, q in zip(a, b)), rep.apply_M(a, b, psi))
    assert max(norm(lhs(x) - rhs(x)) for x in pts) > 1e-6


def test_T_trivial_cases():
    psi = psi0()
    x = (0.4, 0.1, -0.8)
    assert close(rep.apply_T((0, 0, 0), (0, 0, 0), psi, 0.7)(x), psi(x))
    u = (0.2, 0.3, -0.1)
    assert close(rep.apply_T(u, (0, 0, 0), psi, 0.7)(x), rep.apply_V((0.14, 0.21, -0.07), psi)(x))
    with pytest.raises(ValueError):
        rep.apply_T(u, u, psi, 0.0)


@pytest.mark.parametrize("hbar", [1.0, 0.5, 0.1])
def test_T_product(hbar):
    for i in range(30):
        u, v, u2, v2, psi, pts = rep.sample_T(0, i, hbar)
        assert rep.T_product_check(u, v, u2, v2, psi, pts, hbar) < 1e-10


# -- Zassenhaus cross-check --------------------------------------------------------------


def test_crosscheck_trivial():
    exact, series, err = rep.multiplier_crosscheck((0.3, 0.1, 0.2), (0, 0, 0), (1.0, 0.5, -0.3), 0.1, 2)
    assert err < 1e-15 and abs(exact - 1) < 1e-15


def test_crosscheck_parallel_shifts():
    """u parallel to u': the leading exponent vanishes and the error is small."""
    u = (0.3, -0.2, 0.5)
    u2 = tuple(-0.7 * c for c in u)
    x = (1.2, 0.4, -0.5)
    errs = [rep.multiplier_crosscheck(u, u2, x, h, 1)[2] for h in (0.1, 0.05)]
    assert errs[0] < 1e-3 and errs[1] < errs[0]


@pytest.mark.parametrize("N", [1, 2])
def test_crosscheck_convergence_order(N):
    hbars = [0.1, 0.05, 0.025]
    for i in range(10):
        u, u2, x = rep.sample_multiplier(0, i)
        errs = [rep.multiplier_crosscheck(u, u2, x, h, N)[2] for h in hbars]
        assert rep.fit_slope(hbars, errs) >= N + 1 - 0.3


# -- kernels -------------------------------------------------------------------------------


def test_kernel_point_validation():
    z = (0.0, 0.0, 0.0)
    good = (0.5, 0.2, 0.1)
    with pytest.raises(ZeroVector):
        rep.KernelPoint(z, z, z, good, z, good, 1.0)
    with pytest.raises(ValueError):
        rep.KernelPoint(z, good, z, good, z, good, -1.0)
    k = rep.KernelPoint(z, good, z, good, z, good, 1.0)
    assert rep.KernelPoint.from_json(k.to_json()) == k


def test_kernel_modulus_and_hand_assembly():
    for i in range(20):
        k = rep.sample_kernel_point(0, i, 0.8)
        K = rep.kernel_eval(k)
        assert abs(abs(K) * (math.pi * 0.8) ** 6 - 1) < 1e-10
        # [DERIVED] assemble the same value from its definition
        pp1, pp2 = np.subtract(k.p, k.p1), np.subtract(k.p, k.p2)
        qq1, qq2 = np.subtract(k.q, k.q1), np.subtract(k.q, k.q2)
        moyal = (math.pi * 0.8) ** -6 * np.exp(-2j / 0.8 * (pp1 @ qq2 - pp2 @ qq1))
        a, b = tuple(-2 * qq2), tuple(2 * qq1)
        x = tuple(qq1 + np.array(k.q2))
        m = qmul(qmul(conj(rep.w_phase(tuple(np.add(a, b)), x)), rep.w_phase(a, tuple(np.subtract(x, b)))),
                 rep.w_phase(b, x))
        z, res = complex_project(m, x)
        assert res < 1e-10
        assert abs(K - moyal * z) < 1e-10 * abs(moyal)


def test_degenerate_point_is_moyal():
    k = rep.sample_kernel_point(0, 0, 1.0)
    deg = rep.KernelPoint(k.p1, k.q, k.p2, k.q, k.p, k.q, 1.0)
    assert rep.kernel_eval(deg) == rep.moyal_kernel(deg)


def test_approx_kernel_coplanar_is_moyal():
    k = rep.KernelPoint((0.1, 0, 0), (1, 0, 0), (0, 0.2, 0), (0.3, 0.5, 0), (0, 0, 0.4), (0.2, -0.7, 0), 0.5)
    assert rep.triple_term(k) == 0
    assert rep.kernel_approx_eval(k) == rep.moyal_kernel(k)


def test_approx_exponent_is_leading_zassenhaus_term():
    for i in range(10):
        k = rep.sample_kernel_point(3, i)
        assert abs(rep.leading_exponent(k) + rep.triple_term(k)) < 1e-12


def test_exact_kernel_phase_has_the_approximate_exponent_as_argument():
    """Small separations: arg m -> -q.(q' x q'')/|x|^3, so m enters unconjugated."""
    ratios = []
    for eps in (0.04, 0.02, 0.01):
        q = (1.0, 0.2, 0.1)
        q1 = (1 + 0.3 * eps, 0.2 - 0.5 * eps, 0.1 + 0.7 * eps)
        q2 = (1 - 0.4 * eps, 0.2 + 0.9 * eps, 0.1 + 0.2 * eps)
        k = rep.KernelPoint((0, 0, 0), q1, (0, 0, 0), q2, (0, 0, 0), q, 1.0)
        m, _ = rep.kernel_multiplier(k)
        ratios.append(cmath.phase(m) / -rep.triple_term(k))
    assert all(r > 0 for r in ratios)
    assert abs(ratios[-1] - 1) < abs(ratios[0] - 1)
    assert abs(ratios[-1] - 1) < 0.02
