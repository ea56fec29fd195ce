import math

import numpy as np
from pytest import approx, mark, raises

from constants import MEASURE_COS_D, MEASURE_DCHI
from operators import PHI, S, U, StateSampler
from quadrature import (
    GAUSS_LEGENDRE, TANH_SINH, QuadratureRule, default_order, gauss_legendre, gram_matrix, integrate,
    interval_integral, normalize_gram, orthogonality_report, scarf_states, stable_integral, tanh_sinh
)


def test_lowest_gauss_legendre_rules():
    rule = gauss_legendre(1)
    assert list(rule.nodes) == [0.0]
    assert rule.weights == approx([2.0])

    rule = gauss_legendre(2)
    assert rule.nodes == approx([-1 / math.sqrt(3), 1 / math.sqrt(3)], abs=1e-15)
    assert rule.weights == approx([1.0, 1.0], abs=1e-15)

    rule = gauss_legendre(3)
    assert rule.nodes == approx([-math.sqrt(0.6), 0.0, math.sqrt(0.6)], abs=1e-15)
    assert rule.weights == approx([5 / 9, 8 / 9, 5 / 9], abs=1e-15)


@mark.parametrize("n", (1, 2, 5, 12))
def test_gauss_legendre_polynomial_exactness(n):
    rule = gauss_legendre(n)
    for k in range(2 * n):
        expected = 0.0 if k % 2 else 2.0 / (k + 1)
        assert interval_integral(lambda x: x ** k, rule) == approx(expected, abs=1e-13)
    # degree 2n is the first one the rule misses
    assert abs(interval_integral(lambda x: x ** (2 * n), rule) - 2.0 / (2 * n + 1)) > 1e-9


@mark.parametrize("n", (7, 64, 256))
def test_gauss_legendre_weights_and_symmetry(n):
    rule = gauss_legendre(n)
    assert rule.size == n
    assert float(np.sum(rule.weights)) == approx(2.0, abs=1e-13)
    assert np.all(rule.weights > 0)
    assert np.all(np.diff(rule.nodes) > 0)
    assert np.array_equal(rule.nodes, -rule.nodes[::-1])
    assert np.array_equal(rule.weights, rule.weights[::-1])


def test_rule_validation():
    with raises(ValueError):
        gauss_legendre(0)
    with raises(ValueError):
        tanh_sinh(step=0.0)
    with raises(ValueError):
        QuadratureRule([0.0, 1.0], [1.0, 1.0], 2)
    with raises(ValueError):
        QuadratureRule([0.0], [1.0, 1.0], 1)


def test_tanh_sinh_handles_endpoint_behaviour():
    rule = tanh_sinh()
    assert rule.kind == TANH_SINH
    assert np.all(np.abs(rule.nodes) < 1.0)
    assert interval_integral(lambda x: np.sqrt(1 - x * x), rule) == approx(math.pi / 2, abs=1e-12)
    assert interval_integral(lambda x: 1 / np.sqrt(1 - x * x), rule) == approx(math.pi, abs=1e-6)


def test_integrate_maps_onto_chi():
    assert integrate(np.cos, gauss_legendre(32)) == approx(2.0, abs=1e-14)
    assert integrate(lambda chi: np.cos(chi) ** 2, gauss_legendre(32)) == approx(math.pi / 2, abs=1e-14)


def test_stable_integral_keeps_gauss_legendre_for_smooth_integrands():
    value, kind, stable = stable_integral(np.cos, 16)
    assert value == approx(2.0, abs=1e-14)
    assert kind == GAUSS_LEGENDRE and stable


def test_stable_integral_falls_back_on_endpoint_singularity():
    value, kind, stable = stable_integral(lambda chi: 1 / np.sqrt(np.cos(chi)), 16)
    assert kind == TANH_SINH and not stable
    assert value == approx(math.sqrt(math.pi) * math.gamma(0.25) / math.gamma(0.75), abs=1e-5)


def test_normalize_gram():
    normalized = normalize_gram([[4.0, 2.0], [2.0, 9.0]])
    assert normalized == approx(np.array([[1.0, 1 / 3], [1 / 3, 1.0]]))


def test_default_order_grows_with_principal_number():
    assert default_order(scarf_states([1, 2], 0, 0.0)) == 128 + 32 * 2
    assert default_order(scarf_states([1, 2, 3, 4, 5, 6, 7, 8], 0, 0.0)) == 128 + 32 * 8


@mark.parametrize("ell", (0, 1))
def test_scarf_states_are_orthogonal(ell):
    states = scarf_states(range(ell + 1, ell + 5), ell, 0.4)
    result = gram_matrix(states)
    assert result.max_off_diagonal < 1e-9
    assert result.max_diagonal_deviation < 1e-12
    assert np.all(np.diag(result.matrix) > 0)


def test_orthogonality_up_to_eighth_level():
    result = gram_matrix(scarf_states(range(1, 9), 0, -0.3))
    report = orthogonality_report(result, [f"N={N}" for N in range(1, 9)])
    assert report["orthonormal"], report
    assert report["measure"] == MEASURE_DCHI
    assert report["labels"][-1] == "N=8"
    assert report["rule"] in (GAUSS_LEGENDRE, TANH_SINH)


def test_unperturbed_harmonics_orthogonal_under_cos_d_measure():
    states = [StateSampler(S, K, 1, 0.0) for K in range(1, 6)]
    result = gram_matrix(states, measure=MEASURE_COS_D)
    assert result.max_off_diagonal < 1e-12


def test_measures_agree_on_the_same_states():
    rule = gauss_legendre(200)
    b = 0.25
    with_u = gram_matrix(scarf_states([1, 2, 3], 0, b, kind=U), rule=rule, measure=MEASURE_DCHI)
    with_phi = gram_matrix(scarf_states([1, 2, 3], 0, b, kind=PHI), rule=rule, measure=MEASURE_COS_D)
    assert with_u.normalized == approx(with_phi.normalized, rel=1e-12, abs=1e-12)
    assert with_u.rule_kind == GAUSS_LEGENDRE and with_u.order == 200 and with_u.stable


def test_gram_rejects_bad_input():
    with raises(ValueError):
        gram_matrix(scarf_states([1, 2], 0, 0.1, kind=U), measure=MEASURE_COS_D)
    with raises(ValueError):
        gram_matrix(scarf_states([1], 0, 0.1), measure="sin_d")
    with raises(ValueError):
        gram_matrix([])
