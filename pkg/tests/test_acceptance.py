"""Acceptance criteria, one test each.

Each test records a one-line PASS/FAIL summary; the lines are printed at the
end of the session (see conftest.py) and immediately when run with ``-s``.
Timed criteria start from empty caches.
"""

import itertools
import time

import pytest

from monopole_star import verify as V
from monopole_star.cli import run
from monopole_star.families import load_family
from monopole_star.kontsevich import block_poisson
from monopole_star.starproduct import bidiff_operators, poisson_bracket, star
from monopole_star.symbolic import I, Q, SymbolFunction, beta

RESULTS = []


def record(n, title, ok, detail, elapsed, limit=None):
    within = limit is None or elapsed < limit
    status = "PASS" if ok and within else "FAIL"
    budget = f" (limit {limit:g} s)" if limit is not None else ""
    line = f"[{status}] criterion {n}: {title}: {detail}; {elapsed:.2f} s{budget}"
    RESULTS.append(line)
    print(line)
    return ok and within


@pytest.fixture
def cold():
    V.clear_caches()
    start = time.perf_counter()
    return lambda: time.perf_counter() - start


def test_1_second_order_expansion(cold):
    code, out = run(["expand", "--order", "2"])
    match = out["residuals"]["reference_match"]
    assert record(1, "expand --order 2 equals stored second-order table", code == 0 and all(match),
                  f"orders 0..2 match={match}", cold(), 5)


def test_2_zassenhaus_ground_truth(cold):
    r = V.zassenhaus_report(degree=6, samples=20, seed=0)
    res = r["residuals"]
    ok = all(res["ground_truth"].values()) and res["free_algebra_identity"] and not res["nilpotent_matrix_failures"]
    assert record(2, "C2, C3 exact; free-algebra identity to degree 6; 20 nilpotent 7x7 pairs", ok,
                  f"ground truth={res['ground_truth']}, identity={res['free_algebra_identity']}, "
                  f"matrix failures={len(res['nilpotent_matrix_failures'])}", cold(), 30)


def test_3_specialisation(cold):
    r = V.zassenhaus_report(degree=3, samples=0, seed=0)
    spec = r["residuals"]["specialization"]
    assert record(3, "specialised C2, C3 and exponent through hbar^2", all(spec.values()), str(spec), cold())


def test_4_associativity(cold):
    r = V.assoc_report(2, "acceptance")
    res = r["residuals"]
    assert record(4, "associativity through hbar^2 on the 32-symbol family, per mu-degree", r["pass"],
                  f"{res['triples_checked']} triples, {res['n_failures']} nonzero associators", cold(), 120)


@pytest.mark.slow
def test_4_stretch_order_3():
    start = time.perf_counter()
    r = V.assoc_report(3, "acceptance")
    res = r["residuals"]
    elapsed = time.perf_counter() - start
    line = (f"[{'PASS' if r['pass'] else 'FAIL'}] criterion 4 stretch (non-blocking): associativity through "
            f"hbar^3: {res['triples_checked']} triples, {res['n_failures']} nonzero associators; {elapsed:.2f} s")
    RESULTS.append(line)
    print(line)


def test_5_kontsevich_equivalence(cold):
    r = V.kontsevich_report("acceptance")
    res = r["residuals"]
    assert record(5, "second-order Kontsevich product equals star(., ., 2) on the family", r["pass"],
                  f"{res['pairs_checked']} pairs, {res['n_failures']} mismatches, "
                  f"Jacobi nonzero={len(res['jacobi_nonzero'])}", cold(), 60)


def test_6_coordinate_products(cold):
    p = [SymbolFunction.p(i) for i in range(3)]
    q = [SymbolFunction.q(i) for i in range(3)]
    half_i = I * Q(1, 2)
    ok = True
    for i, j in itertools.product(range(3), repeat=2):
        s = star(q[i], p[j], 2)
        ok &= s[0] == q[i] * p[j] and s[1] == SymbolFunction.constant(half_i if i == j else 0) and s[2].is_zero()
        s = star(p[i], p[j], 2)
        ok &= s[1] == SymbolFunction.from_radial(beta(i, j)).scale(half_i) and s[2].is_zero()
    _, fam = load_family("acceptance")
    B1 = bidiff_operators(1)[1]
    antisym = all(B1.apply(f, g) - B1.apply(g, f) == poisson_bracket(f, g).scale(I)
                  for f, g in itertools.product(fam, repeat=2))
    jacobi = not block_poisson().jacobi_residuals()
    basis = p + q + [SymbolFunction.rinv(1)]
    for f, g, h in itertools.combinations(basis, 3):
        jac = (poisson_bracket(f, poisson_bracket(g, h)) + poisson_bracket(g, poisson_bracket(h, f))
               + poisson_bracket(h, poisson_bracket(f, g)))
        jacobi &= jac.is_zero()
    assert record(6, "q*p, p*p exact; B1 antisymmetrisation = i{.,.}; Jacobi", ok and antisym and jacobi,
                  f"products={ok}, antisymmetrisation={antisym}, jacobi={jacobi}", cold())


def test_7_phase_oracle(cold):
    r = V.phase_oracle_report(100, 0, 1e-10)
    err = r["residuals"]["max_closed_form_vs_quadrature"]
    assert record(7, "closed-form phase vs quadrature, 100 pairs", r["pass"], f"max error {err:.2e} < 1e-10",
                  cold(), 10)


def test_8_cocycle_and_weak_representation(cold):
    c = V.cocycle_report(100, 0, 1e-10)
    w = V.weakrep_report(100, 0, 1e-10)
    detail = (f"cocycle {c['residuals']['max_cocycle']:.2e}, commutant {c['residuals']['max_commutant']:.2e}, "
              f"V(a)V(b) {w['residuals']['max_weak_representation']:.2e}, "
              f"T(w)T(w') {w['residuals']['max_T_product']:.2e}")
    assert record(8, "cocycle and weak-representation residuals, 100 configurations each",
                  c["pass"] and w["pass"], detail, cold())


def test_9_multiplier_convergence(cold):
    r = V.multiplier_report((1, 2), (0.1, 0.05, 0.025), 10, 0)
    res = r["residuals"]
    detail = ", ".join(f"N={n}: min slope {res[n]['min_slope']:.2f} >= {res[n]['required']:.1f}" for n in res)
    assert record(9, "exact vs Zassenhaus multiplier, log-log slope", r["pass"], detail, cold())


def test_10_kernel_consistency(cold):
    r = V.kernel_consistency_report(samples=20, seed=0, hbar=1.0, tol=1e-10)
    res = r["residuals"]
    detail = (f"modulus {res['max_modulus_relative']:.1e}, degenerate vs Moyal {res['max_degenerate_vs_moyal']:.1e}, "
              f"coplanar approx vs Moyal {res['max_coplanar_approx_vs_moyal']:.1e}")
    assert record(10, "kernel modulus, degenerate point, coplanar approximation", r["pass"], detail, cold())
