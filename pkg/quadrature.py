#!/usr/bin/env python3
"""
Quadrature Module for the Scarf Hypersphere Verifier
Gauss-Legendre and tanh-sinh rules on (-1, 1), mapped affinely onto
chi in (-pi/2, pi/2), and Gram matrices of Scarf I states

Version: 2.0.0 (Exact Decompositions + Spectral Audit)
Developer: 8roku8.hl
"""

import math
from dataclasses import dataclass
from typing import Callable, List, Optional, Sequence

import numpy as np

from constants import DEFAULT_CONFIG, MEASURE_COS_D, MEASURE_DCHI, MEASURES, SCHEMA_VERSION
from errors import ConvergenceFailure
from operators import PHI, S, S_TILDE, U, StateSampler, eval_state

QUADRATURE_DEFAULTS = DEFAULT_CONFIG["quadrature"]

GAUSS_LEGENDRE = "gauss_legendre"
TANH_SINH = "tanh_sinh"


@dataclass(frozen=True)
class QuadratureRule:
    nodes: np.ndarray
    weights: np.ndarray
    order: int
    kind: str = GAUSS_LEGENDRE

    def __post_init__(self):
        nodes = np.asarray(self.nodes, dtype=float)
        weights = np.asarray(self.weights, dtype=float)
        if nodes.shape != weights.shape or nodes.ndim != 1:
            raise ValueError("nodes and weights must be vectors of equal length")
        if np.any(np.abs(nodes) >= 1.0):
            raise ValueError("quadrature nodes must lie strictly inside (-1, 1)")
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "weights", weights)

    @property
    def size(self) -> int:
        return self.nodes.size


def _legendre_pair(n: int, x: np.ndarray):
    """(P_n(x), P_{n-1}(x))"""
    p_prev = np.ones_like(x)
    p_curr = x.copy()
    if n == 0:
        return p_prev, np.zeros_like(x)
    for m in range(2, n + 1):
        p_prev, p_curr = p_curr, ((2 * m - 1) * x * p_curr - (m - 1) * p_prev) / m
    return p_curr, p_prev


def gauss_legendre(n: int,
                   tolerance: float = QUADRATURE_DEFAULTS["newton_tolerance"],
                   max_iter: int = QUADRATURE_DEFAULTS["newton_max_iter"]) -> QuadratureRule:
    """Legendre roots by Newton iteration from Chebyshev-like guesses"""
    if n < 1:
        raise ValueError(f"Gauss-Legendre order must be >= 1 (n={n})")
    i = np.arange(1, n + 1)
    x = np.cos(math.pi * (4 * i - 1) / (4 * n + 2))

    for _ in range(max_iter):
        p_n, p_prev = _legendre_pair(n, x)
        dp = n * (x * p_n - p_prev) / (x * x - 1.0)
        step = p_n / dp
        x = x - step
        if np.max(np.abs(step)) < tolerance:
            break
    else:
        raise ConvergenceFailure(f"Newton iteration for Gauss-Legendre order {n} did not converge")

    p_n, p_prev = _legendre_pair(n, x)
    dp = n * (x * p_n - p_prev) / (x * x - 1.0)
    weights = 2.0 / ((1.0 - x * x) * dp * dp)

    order = np.argsort(x)
    x, weights = x[order], weights[order]
    # exact symmetry about 0
    x = 0.5 * (x - x[::-1])
    weights = 0.5 * (weights + weights[::-1])
    return QuadratureRule(x, weights, n, GAUSS_LEGENDRE)


def tanh_sinh(step: float = QUADRATURE_DEFAULTS["tanh_sinh_step"],
              endpoint_gap: float = 1e-14) -> QuadratureRule:
    """Double-exponential rule; nodes closer than endpoint_gap to +-1 are dropped"""
    if step <= 0:
        raise ValueError("tanh-sinh step must be positive")
    nodes: List[float] = []
    weights: List[float] = []
    k = 0
    while True:
        t = k * step
        u = 0.5 * math.pi * math.sinh(t)
        gap = 2.0 / (math.exp(2.0 * u) + 1.0)          # 1 - tanh(u) without cancellation
        if gap < endpoint_gap:
            break
        x = math.tanh(u)
        w = step * 0.5 * math.pi * math.cosh(t) / math.cosh(u) ** 2
        if k == 0:
            nodes.append(0.0)
            weights.append(w)
        else:
            nodes.extend((-x, x))
            weights.extend((w, w))
        k += 1
    order = np.argsort(nodes)
    return QuadratureRule(np.asarray(nodes)[order], np.asarray(weights)[order], len(nodes), TANH_SINH)


def integrate(f: Callable[[np.ndarray], np.ndarray], rule: QuadratureRule) -> float:
    """int_{-pi/2}^{pi/2} f(chi) dchi through chi = (pi/2) x"""
    half = 0.5 * math.pi
    return float(half * np.dot(rule.weights, f(half * rule.nodes)))


def interval_integral(f: Callable[[np.ndarray], np.ndarray], rule: QuadratureRule) -> float:
    """int_{-1}^{1} f(x) dx"""
    return float(np.dot(rule.weights, f(rule.nodes)))


def stable_integral(f: Callable[[np.ndarray], np.ndarray], order: int,
                    tolerance: float = QUADRATURE_DEFAULTS["stability_tolerance"]):
    """int over chi with Gauss-Legendre at order and 2*order, tanh-sinh if they disagree.

    Returns (value, rule kind, whether Gauss-Legendre was stable).
    """
    coarse = integrate(f, gauss_legendre(order))
    fine = integrate(f, gauss_legendre(2 * order))
    if abs(fine - coarse) <= tolerance * max(1.0, abs(fine)):
        return fine, GAUSS_LEGENDRE, True
    return integrate(f, tanh_sinh()), TANH_SINH, False


# Gram matrices

def _state_values(state: StateSampler, chi: np.ndarray, measure: str) -> np.ndarray:
    value, _, _ = eval_state(state, chi)
    if measure == MEASURE_COS_D:
        if state.kind == U:
            raise ValueError("the cos^d measure pairs quasi-radial states, not U")
        return value * np.cos(chi) ** (state.d / 2.0)
    return value


def _raw_gram(states: Sequence[StateSampler], rule: QuadratureRule, measure: str) -> np.ndarray:
    half = 0.5 * math.pi
    chi = half * rule.nodes
    samples = np.vstack([_state_values(state, chi, measure) for state in states])
    return half * (samples * rule.weights) @ samples.T


def normalize_gram(matrix) -> np.ndarray:
    """G_ij / sqrt(G_ii G_jj)"""
    matrix = np.asarray(matrix, dtype=float)
    scale = 1.0 / np.sqrt(np.diag(matrix))
    return matrix * np.outer(scale, scale)


def default_order(states: Sequence[StateSampler]) -> int:
    """base + per-N * N_max, N_max the largest principal index in the set"""
    largest = max((state.index for state in states if state.kind in (PHI, U, S, S_TILDE)), default=1)
    return QUADRATURE_DEFAULTS["base_order"] + QUADRATURE_DEFAULTS["order_per_N"] * max(largest, 1)


@dataclass
class GramResult:
    matrix: np.ndarray
    normalized: np.ndarray
    rule_kind: str
    order: int
    stable: bool
    measure: str

    @property
    def max_off_diagonal(self) -> float:
        off = self.normalized - np.diag(np.diag(self.normalized))
        return float(np.max(np.abs(off))) if off.size else 0.0

    @property
    def max_diagonal_deviation(self) -> float:
        return float(np.max(np.abs(np.diag(self.normalized) - 1.0)))


def gram_matrix(states: Sequence[StateSampler], rule: Optional[QuadratureRule] = None,
                measure: str = MEASURE_DCHI,
                stability_tolerance: float = QUADRATURE_DEFAULTS["stability_tolerance"]) -> GramResult:
    """Pairwise inner products over chi in (-pi/2, pi/2).

    Without an explicit rule, Gauss-Legendre of order 128 + 32 N is checked
    against twice that order and replaced by tanh-sinh when the two differ
    by more than the stability tolerance.
    """
    if measure not in MEASURES:
        raise ValueError(f"unknown measure '{measure}' (choose from {', '.join(MEASURES)})")
    if not states:
        raise ValueError("gram_matrix needs at least one state")

    if rule is not None:
        matrix = _raw_gram(states, rule, measure)
        return GramResult(matrix, normalize_gram(matrix), rule.kind, rule.order, True, measure)

    n = default_order(states)
    coarse = _raw_gram(states, gauss_legendre(n), measure)
    fine_rule = gauss_legendre(2 * n)
    fine = _raw_gram(states, fine_rule, measure)
    scale = max(1.0, float(np.max(np.abs(fine))))
    if float(np.max(np.abs(fine - coarse))) <= stability_tolerance * scale:
        return GramResult(fine, normalize_gram(fine), GAUSS_LEGENDRE, fine_rule.order, True, measure)

    fallback = tanh_sinh()
    matrix = _raw_gram(states, fallback, measure)
    return GramResult(matrix, normalize_gram(matrix), TANH_SINH, fallback.order, False, measure)


def scarf_states(N_values: Sequence[int], ell: int, b: float, d: int = 2,
                 kind: str = U) -> List[StateSampler]:
    return [StateSampler(kind, N, ell, b, d) for N in N_values]


def orthogonality_report(result: GramResult, labels: Sequence[str],
                         tolerance: float = 1e-9) -> dict:
    return {
        "schema": SCHEMA_VERSION,
        "measure": result.measure,
        "rule": result.rule_kind,
        "order": result.order,
        "gauss_legendre_stable": result.stable,
        "labels": list(labels),
        "max_off_diagonal": result.max_off_diagonal,
        "max_diagonal_deviation": result.max_diagonal_deviation,
        "tolerance": tolerance,
        "orthonormal": result.max_off_diagonal <= tolerance and result.max_diagonal_deviation <= tolerance,
    }
