from fractions import Fraction

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st
from pytest import approx, mark, raises

from errors import DomainError
from exact_ring import BPoly
from orthopoly import (
    GEGENBAUER, JACOBI, GegenbauerParams, JacobiParams, eval_float_family, evaluate_family,
    gegenbauer_at_one, gegenbauer_exact, gegenbauer_leading_coefficient, gegenbauer_values,
    jacobi_exact, jacobi_leading_coefficient, jacobi_sum_formula, jacobi_values
)


def test_jacobi_first_members():
    assert jacobi_exact(0, 3) == 1
    # P_1 = -b + (2l+3)/2 s
    assert jacobi_exact(1, 0).coefficients == (BPoly([0, -1]), BPoly([Fraction(3, 2)]))


def test_jacobi_second_member_at_l0():
    p2 = jacobi_exact(2, 0)
    assert p2.coefficient(0) == BPoly([Fraction(-5, 8), 0, Fraction(1, 2)])
    assert p2.coefficient(1) == BPoly([0, -2])
    assert p2.coefficient(2) == BPoly([Fraction(5, 2)])


@mark.parametrize("n", range(0, 8))
@mark.parametrize("ell", (0, 1, 3))
def test_recurrence_agrees_with_sum_formula(n, ell):
    assert jacobi_exact(n, ell) == jacobi_sum_formula(n, ell)


@mark.parametrize("n", range(0, 11))
def test_jacobi_reflection_symmetry(n):
    # P_n^{a,b}(-x) = (-1)^n P_n^{b,a}(x); swapping alpha and beta is b -> -b
    p = jacobi_exact(n, 1)
    assert p.reflect().substitute_b_neg() == p.scale((-1) ** n)


@mark.parametrize("n", range(0, 9))
@mark.parametrize("ell", (0, 2))
def test_unperturbed_jacobi_is_a_gegenbauer_multiple(n, ell):
    jac = jacobi_exact(n, ell).at_b(0)
    geg = gegenbauer_exact(n, ell + 1)
    ratio = jac.leading.eval(0) / geg.leading.eval(0)
    assert ratio != 0
    assert jac == geg.scale(ratio)


@mark.parametrize("k", range(0, 9))
def test_gegenbauer_parity(k):
    c = gegenbauer_exact(k, 2)
    assert c.reflect() == c.scale((-1) ** k)


@mark.parametrize("n", range(0, 7))
def test_leading_coefficients(n):
    assert jacobi_exact(n, 1).leading == jacobi_leading_coefficient(n, 1)
    assert gegenbauer_exact(n, 3).leading == gegenbauer_leading_coefficient(n, 3)


def test_gegenbauer_normalization():
    assert gegenbauer_exact(1, 2).coefficients == (BPoly.zero(), BPoly([4]))
    assert gegenbauer_at_one(4, 1) == 5
    assert gegenbauer_exact(4, 1).evaluate(1, 0) == 5


@settings(max_examples=60, deadline=None)
@given(st.integers(min_value=0, max_value=10),
       st.integers(min_value=0, max_value=3),
       st.fractions(min_value=-1, max_value=1, max_denominator=64),
       st.fractions(min_value=-3, max_value=3, max_denominator=16))
def test_exact_and_float_evaluation_agree(n, ell, s0, b0):
    exact = float(jacobi_exact(n, ell).evaluate(s0, b0))
    value, _ = eval_float_family(JACOBI, JacobiParams(n, ell), float(s0), b0=float(b0))
    assert value == approx(exact, rel=1e-10, abs=1e-10)


def test_float_examples():
    value, _ = eval_float_family(JACOBI, JacobiParams(1, 0), 0.3, b0=1.0)
    assert value == approx(-0.55, abs=1e-15)
    value, _ = eval_float_family(GEGENBAUER, GegenbauerParams(1, 2), 0.5)
    assert value == approx(2.0, abs=1e-15)


@mark.parametrize("x", (-1.0, -0.2, 0.0, 0.7, 1.0))
def test_first_jacobi_derivative_is_constant(x):
    _, derivative = eval_float_family(JACOBI, JacobiParams(1, 2), x, b0=0.4, with_derivative=True)
    # (alpha + beta + 2)/2 with alpha + beta = 2l + 1
    assert derivative == approx(3.5, abs=1e-14)


def test_derivatives_match_exact_polynomials():
    s = np.linspace(-0.9, 0.9, 7)
    b0 = 0.35
    p = jacobi_exact(5, 1)
    value, first, second = evaluate_family(JACOBI, 5, s, order=2, alpha=1.5 - b0, beta=1.5 + b0)
    assert value == approx(p.evaluate_float(s, b0), rel=1e-12)
    assert first == approx(p.derivative().evaluate_float(s, b0), rel=1e-12)
    assert second == approx(p.derivative().derivative().evaluate_float(s, b0), rel=1e-12)

    c = gegenbauer_exact(4, 2)
    value, first, second = evaluate_family(GEGENBAUER, 4, s, order=2, lam=2.0)
    assert second == approx(c.derivative().derivative().evaluate_float(s, 0.0), rel=1e-12, abs=1e-12)
    assert first == approx(c.derivative().evaluate_float(s, 0.0), rel=1e-12, abs=1e-12)


def test_negative_degree_is_zero():
    assert float(jacobi_values(-1, 0.5, 0.5, 0.3)) == 0.0
    assert float(gegenbauer_values(-1, 1.0, 0.3)) == 0.0


def test_domain_and_parameter_errors():
    with raises(DomainError):
        evaluate_family(JACOBI, 2, 1.5, alpha=0.5, beta=0.5)
    with raises(ValueError):
        evaluate_family(JACOBI, 2, 0.5, order=3)
    with raises(ValueError):
        evaluate_family("hermite", 2, 0.5)
    with raises(ValueError):
        JacobiParams(-1, 0)
    with raises(ValueError):
        GegenbauerParams(2, 0)
    with raises(TypeError):
        eval_float_family(JACOBI, GegenbauerParams(1, 1), 0.1)
