#!/usr/bin/env python3
"""
Orthogonal Polynomial Module for the Scarf Hypersphere Verifier
Jacobi polynomials with b-dependent parameters and Gegenbauer polynomials,
built exactly over Q[b] and evaluated in floating point with derivatives

Jacobi parameters throughout: alpha = l - b + 1/2, beta = l + b + 1/2,
so alpha + beta = 2l + 1 never depends on b.
Gegenbauer normalization: C_0 = 1, C_1 = 2*lambda*x.

Version: 2.0.0 (Exact Decompositions + Spectral Audit)
Developer: 8roku8.hl
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Optional, Tuple, Union

import numpy as np

from errors import DomainError
from exact_ring import BPoly, SPoly

JACOBI = "jacobi"
GEGENBAUER = "gegenbauer"
HALF = Fraction(1, 2)


@dataclass(frozen=True)
class JacobiParams:
    """P_n^{alpha,beta} with alpha = l - b + 1/2 and beta = l + b + 1/2"""
    n: int
    ell: int

    def __post_init__(self):
        if self.n < 0 or self.ell < 0:
            raise ValueError(f"Jacobi indices must be non-negative (n={self.n}, l={self.ell})")

    @property
    def alpha_plus_beta(self) -> int:
        return 2 * self.ell + 1

    def alpha(self, b0: float) -> float:
        return self.ell - b0 + 0.5

    def beta(self, b0: float) -> float:
        return self.ell + b0 + 0.5


@dataclass(frozen=True)
class GegenbauerParams:
    """C_k^lambda with integer order lambda >= 1"""
    k: int
    lam: int

    def __post_init__(self):
        if self.k < 0:
            raise ValueError(f"Gegenbauer degree must be non-negative (k={self.k})")
        if self.lam < 1:
            raise ValueError(f"Gegenbauer order must be >= 1 (lambda={self.lam})")


# Exact constructions

@lru_cache(maxsize=None)
def jacobi_exact(n: int, ell: int) -> SPoly:
    """P_n^{l-b+1/2, l+b+1/2}(s) with coefficients exact in b, by the three-term recurrence"""
    JacobiParams(n, ell)
    sigma = Fraction(2 * ell + 1)          # alpha + beta
    if n == 0:
        return SPoly.constant(1)
    # P_1 = (alpha - beta)/2 + ((alpha + beta + 2)/2) s, with alpha - beta = -2b
    p1 = SPoly([BPoly([0, -1]), BPoly.constant((sigma + 2) / 2)])
    if n == 1:
        return p1

    prev, curr = SPoly.constant(1), p1
    for m in range(2, n + 1):
        a_m = 2 * m + sigma - 1
        b_m = (2 * m + sigma) * (2 * m + sigma - 2)
        denominator = 2 * m * (m + sigma) * (2 * m + sigma - 2)
        # alpha^2 - beta^2 = -2 sigma b
        linear = SPoly([BPoly([0, -2 * sigma * a_m]), BPoly.constant(a_m * b_m)])
        # (m + alpha - 1)(m + beta - 1) = (m + l - 1/2)^2 - b^2
        shift = m + ell - HALF
        damping = BPoly([shift * shift, 0, -1]).scale(2 * (2 * m + sigma))
        nxt = (curr * linear - prev.scale(damping)).scale(BPoly.constant(1 / denominator))
        prev, curr = curr, nxt
    return curr


@lru_cache(maxsize=None)
def gegenbauer_exact(k: int, lam: int) -> SPoly:
    """C_k^lambda(s), exact rational coefficients, C_1 = 2*lambda*s"""
    GegenbauerParams(k, lam)
    lam = Fraction(lam)
    if k == 0:
        return SPoly.constant(1)
    prev, curr = SPoly.constant(1), SPoly([0, 2 * lam])
    s = SPoly.s()
    for m in range(2, k + 1):
        nxt = (s * curr).scale(2 * (m + lam - 1)) - prev.scale(m + 2 * lam - 2)
        prev, curr = curr, nxt.scale(Fraction(1, m))
    return curr


def _generalized_binomial(top: BPoly, m: int) -> BPoly:
    """binom(top, m) for a polynomial top linear in b"""
    result = BPoly.constant(1)
    for j in range(m):
        result = result * (top - j)
    return result.scale(Fraction(1, factorial(m)))


def jacobi_sum_formula(n: int, ell: int) -> SPoly:
    """Explicit sum  sum_k binom(n+alpha, n-k) binom(n+beta, k) ((s-1)/2)^k ((s+1)/2)^(n-k).

    Independent of the recurrence; kept as an oracle.
    """
    JacobiParams(n, ell)
    alpha = BPoly([ell + HALF, -1])
    beta = BPoly([ell + HALF, 1])
    minus = SPoly([Fraction(-1, 2), HALF])
    plus = SPoly([HALF, HALF])
    total = SPoly.zero()
    for k in range(n + 1):
        weight = _generalized_binomial(alpha + n, n - k) * _generalized_binomial(beta + n, k)
        total = total + (minus ** k * plus ** (n - k)).scale(weight)
    return total


def jacobi_leading_coefficient(n: int, ell: int) -> Fraction:
    """(n + alpha + beta + 1)_n / (2^n n!)"""
    sigma = 2 * ell + 1
    rising = Fraction(1)
    for j in range(n):
        rising *= n + sigma + 1 + j
    return rising / (2 ** n * factorial(n))


def gegenbauer_leading_coefficient(k: int, lam: int) -> Fraction:
    """2^k (lambda)_k / k!"""
    rising = Fraction(1)
    for j in range(k):
        rising *= lam + j
    return 2 ** k * rising / factorial(k)


# Floating-point evaluation

def _check_domain(x) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    if np.any(~np.isfinite(x)) or np.any(np.abs(x) > 1.0):
        raise DomainError("orthogonal polynomials are evaluated on |x| <= 1 only")
    return x


def jacobi_values(n: int, alpha: float, beta: float, x) -> np.ndarray:
    """P_n^{alpha,beta}(x) by the forward three-term recurrence"""
    x = np.asarray(x, dtype=float)
    if n < 0:
        return np.zeros_like(x)
    p_prev = np.ones_like(x)
    if n == 0:
        return p_prev
    ab = alpha + beta
    p_curr = 0.5 * (alpha - beta) + 0.5 * (ab + 2.0) * x
    for m in range(2, n + 1):
        c0 = 2.0 * m + ab
        a1 = 2.0 * m * (m + ab) * (c0 - 2.0)
        a2 = (c0 - 1.0) * (alpha * alpha - beta * beta)
        a3 = (c0 - 2.0) * (c0 - 1.0) * c0
        a4 = 2.0 * (m + alpha - 1.0) * (m + beta - 1.0) * c0
        p_prev, p_curr = p_curr, ((a2 + a3 * x) * p_curr - a4 * p_prev) / a1
    return p_curr


def gegenbauer_values(k: int, lam: float, x) -> np.ndarray:
    """C_k^lambda(x) by the forward three-term recurrence"""
    x = np.asarray(x, dtype=float)
    if k < 0:
        return np.zeros_like(x)
    c_prev = np.ones_like(x)
    if k == 0:
        return c_prev
    c_curr = 2.0 * lam * x
    for m in range(2, k + 1):
        c_prev, c_curr = c_curr, (2.0 * (m + lam - 1.0) * x * c_curr - (m + 2.0 * lam - 2.0) * c_prev) / m
    return c_curr


def jacobi_derivative(n: int, alpha: float, beta: float, x, order: int = 1) -> np.ndarray:
    """order-th x-derivative through d/dx P_n^{a,b} = ((n+a+b+1)/2) P_{n-1}^{a+1,b+1}"""
    factor = 1.0
    for j in range(order):
        factor *= (n + alpha + beta + 1.0 + j) / 2.0
    return factor * jacobi_values(n - order, alpha + order, beta + order, x)


def gegenbauer_derivative(k: int, lam: float, x, order: int = 1) -> np.ndarray:
    """order-th x-derivative through d/dx C_k^lam = 2 lam C_{k-1}^{lam+1}"""
    factor = 1.0
    for j in range(order):
        factor *= 2.0 * (lam + j)
    return factor * gegenbauer_values(k - order, lam + order, x)


def evaluate_family(kind: str, degree: int, x, order: int = 0,
                    alpha: float = 0.0, beta: float = 0.0, lam: float = 1.0) -> Tuple[np.ndarray, ...]:
    """Value and derivatives up to `order` (0, 1 or 2) of one family member at x"""
    x = _check_domain(x)
    if order not in (0, 1, 2):
        raise ValueError("derivative order must be 0, 1 or 2")
    if kind == JACOBI:
        values = [jacobi_values(degree, alpha, beta, x)]
        values += [jacobi_derivative(degree, alpha, beta, x, r) for r in range(1, order + 1)]
    elif kind == GEGENBAUER:
        values = [gegenbauer_values(degree, lam, x)]
        values += [gegenbauer_derivative(degree, lam, x, r) for r in range(1, order + 1)]
    else:
        raise ValueError(f"unknown polynomial family: {kind}")
    return tuple(values)


def eval_float_family(kind: str, params: Union[JacobiParams, GegenbauerParams], x,
                      b0: float = 0.0, with_derivative: bool = False
                      ) -> Tuple[Union[float, np.ndarray], Optional[Union[float, np.ndarray]]]:
    """(value, derivative or None) of a Jacobi (at deformation b0) or Gegenbauer member"""
    if kind == JACOBI:
        if not isinstance(params, JacobiParams):
            raise TypeError("jacobi evaluation needs JacobiParams")
        result = evaluate_family(JACOBI, params.n, x, order=1 if with_derivative else 0,
                                 alpha=params.alpha(b0), beta=params.beta(b0))
    elif kind == GEGENBAUER:
        if not isinstance(params, GegenbauerParams):
            raise TypeError("gegenbauer evaluation needs GegenbauerParams")
        result = evaluate_family(GEGENBAUER, params.k, x, order=1 if with_derivative else 0,
                                 lam=float(params.lam))
    else:
        raise ValueError(f"unknown polynomial family: {kind}")

    scalar = np.ndim(x) == 0
    unpack = (lambda v: float(v)) if scalar else (lambda v: v)
    value = unpack(result[0])
    derivative = unpack(result[1]) if with_derivative else None
    return value, derivative


def gegenbauer_at_one(k: int, lam: int) -> int:
    """C_k^lam(1) = binom(k + 2 lam - 1, k), handy for scale estimates"""
    return comb(k + 2 * lam - 1, k)
