import random

import numpy as np
import pytest
import sympy as sp

from monopole_star.errors import NotLieElement
from monopole_star.reference import specialization_reference
from monopole_star.symbolic.fourier import FourierPolynomial
from monopole_star.symbolic.gaussian import Q
from monopole_star.symbolic.hbar import HbarSeries
from monopole_star.zassenhaus import (FreeAlgebraElement, MonopoleLieElement, NestedCommutatorCombo,
                                      dynkin_project, expand_nested, free_algebra_residual,
                                      monopole_bracket, multiplier_exponent, nilpotent_matrix_check,
                                      random_nilpotent, specialized_terms, zassenhaus_brackets,
                                      zassenhaus_terms)


def sym_exp(A):
    n = A.shape[0]
    out, term = sp.eye(n), sp.eye(n)
    for k in range(1, n):
        term = term * A / k
        out += term
    return out


def sym_log_unipotent(U):
    n = U.shape[0]
    N = U - sp.eye(n)
    out, power = sp.zeros(n), sp.eye(n)
    for k in range(1, n):
        power = power * N
        out += (-1) ** (k + 1) * power / k
    return out


def random_upper(rng, n):
    """Strictly upper-triangular matrix with small rational entries."""
    return sp.Matrix(n, n, lambda i, j: sp.Rational(rng.randint(-4, 4), rng.randint(1, 3)) if j > i else 0)


def matrix_zassenhaus(X, Y, top):
    """C_2..C_top for nilpotent X, Y from e^{-Y} e^{-X} e^{X+Y}, graded by a scaling parameter."""
    t = sp.Symbol("t")
    R = sym_exp(-t * Y) * sym_exp(-t * X) * sym_exp(t * (X + Y))
    out = []
    for n in range(2, top + 1):
        L = sym_log_unipotent(R).applyfunc(sp.expand)
        C = L.applyfunc(lambda e: e.coeff(t, n))
        out.append(C)
        R = (sym_exp(-t**n * C) * R).applyfunc(sp.expand)
    return out


def eval_combo(combo, X, Y):
    vals = {"X": X, "Y": Y}
    total = sp.zeros(X.shape[0])
    for c, w in combo.terms:
        v = vals[w[-1]]
        for letter in reversed(w[:-1]):
            v = vals[letter] * v - v * vals[letter]
        total += sp.Rational(int(c.numerator), int(c.denominator)) * v
    return total


def test_ground_truth_c2_c3():
    C2, C3 = zassenhaus_brackets(3)
    assert str(C2) == "(-1/2)*[X,Y]"
    assert str(C3) == "(1/6)*[X,[X,Y]] + (1/3)*[Y,[X,Y]]"


def test_free_algebra_identity_through_degree_6():
    assert not free_algebra_residual(6)


def test_free_algebra_identity_detects_a_wrong_term():
    X = FreeAlgebraElement.gen("X", 4)
    Y = FreeAlgebraElement.gen("Y", 4)
    combos = zassenhaus_brackets(4)
    lhs = X.exp() * Y.exp()
    for k, combo in enumerate(combos):
        e = combo.expand(4)
        if k == 1:
            e = e * Q(2)
        lhs = lhs * e.exp()
    assert lhs - (X + Y).exp()


@pytest.mark.parametrize("seed", range(4))
def test_c4_to_c6_match_sympy_matrix_oracle(seed):
    """[DERIVED] nilpotent 7x7 matrices, C_n extracted by a graded matrix logarithm in sympy."""
    rng = random.Random(seed)
    X, Y = random_upper(rng, 7), random_upper(rng, 7)
    oracle = matrix_zassenhaus(X, Y, 6)
    combos = zassenhaus_brackets(6)
    for n in range(2, 7):
        assert eval_combo(combos[n - 2], X, Y) == oracle[n - 2], f"C_{n}"


def test_nilpotent_matrix_check_20_pairs():
    for i in range(20):
        rng = np.random.default_rng(np.random.SeedSequence([0, i]))
        assert nilpotent_matrix_check(random_nilpotent(rng), random_nilpotent(rng))


def test_matrix_identity_breaks_with_perturbed_c2():
    rng = random.Random(9)
    X, Y = random_upper(rng, 7), random_upper(rng, 7)
    combos = zassenhaus_brackets(6)
    lhs = sym_exp(X) * sym_exp(Y)
    for k, combo in enumerate(combos):
        C = eval_combo(combo, X, Y)
        lhs = lhs * sym_exp(C * (2 if k == 0 else 1))
    assert lhs != sym_exp(X + Y)


def test_terms_are_homogeneous():
    for n, C in enumerate(zassenhaus_terms(6), start=2):
        assert all(len(w) == n for w in C.terms)


def test_dynkin_round_trip_and_rejection():
    e = expand_nested("XYXY")
    combo = dynkin_project(e, 4)
    assert combo.expand(4) == e
    with pytest.raises(NotLieElement):
        dynkin_project(FreeAlgebraElement({"XY": Q(1)}, 2), 2)


def test_nested_combo_normalises_innermost_pair():
    c = NestedCommutatorCombo([(Q(1), "XYX"), (Q(1), "XXY")]).normalized()
    assert c.terms == []


def test_exp_log_inverse():
    X = FreeAlgebraElement.gen("X", 5)
    Y = FreeAlgebraElement.gen("Y", 5)
    z = X + Y * Q(1, 3) + X.bracket(Y)
    assert z.exp().log() == z


# -- monopole specialisation ---------------------------------------------------------


def test_specialised_c2_c3_match_hand_formulas():
    ref = specialization_reference()
    C2, C3 = specialized_terms(2)
    assert C2.is_function() and C3.is_function()
    assert C2.f[1] == ref["C2"][1] and C2.f[2].is_zero()
    assert C3.f[2] == ref["C3"][2] and C3.f[1].is_zero()


def test_exponent_through_hbar2():
    ref = specialization_reference()
    s = multiplier_exponent(2)
    assert s[0].is_zero()
    assert s[1] == ref["s"][1]
    assert s[2] == ref["s"][2]


def test_exponent_orders_are_consistent():
    assert multiplier_exponent(3).coeffs[:3] == multiplier_exponent(2).coeffs


def test_monopole_bracket_antisymmetric_and_jacobi():
    order = 3
    u0 = FourierPolynomial.var("u", 0) * FourierPolynomial.var("u'", 1)
    F = MonopoleLieElement.function(HbarSeries([u0], order, FourierPolynomial.zero))
    X, Y = MonopoleLieElement.X(order), MonopoleLieElement.Y(order)
    for A, B in ((X, Y), (X, F), (Y, F)):
        s = monopole_bracket(A, B) + monopole_bracket(B, A)
        assert s.f.is_zero() and not s.a and not s.b

    def br(A, B):
        return monopole_bracket(A, B)

    jac = br(X, br(Y, F)) + br(Y, br(F, X)) + br(F, br(X, Y))
    assert jac.f.is_zero()
