#!/usr/bin/env python3
"""
Exact Ring Module for the Scarf Hypersphere Verifier
Rationals, polynomials in the deformation parameter b over Q, and
polynomials in s = sin(chi) with coefficients in Q[b]

Every value here is immutable and every operation is exact. Floats are
refused as coefficients; float evaluation is offered only as a read-out.

Version: 2.0.0 (Exact Decompositions + Spectral Audit)
Developer: 8roku8.hl
"""

from fractions import Fraction
from typing import Iterable, List, Sequence, Union

import numpy as np

from errors import DegreeMismatch, InexactDivision

Rational = Fraction
Scalar = Union[int, Fraction]

# Degree reported for the zero polynomial
DEGREE_OF_ZERO = -1


def as_rational(value) -> Fraction:
    """Coerce an int, Fraction or "p/q" string to a Fraction (floats are rejected)"""
    if isinstance(value, bool):
        raise TypeError("booleans are not ring elements")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise TypeError(f"cannot use {type(value).__name__} as an exact coefficient")


def format_rational(value: Fraction) -> str:
    """Always "num/den", so 1 is written "1/1" and -1/2 as "-1/2" """
    value = Fraction(value)
    return f"{value.numerator}/{value.denominator}"


def parse_rational(text: str) -> Fraction:
    """Parse "p/q", "p" or a terminating decimal such as "0.3" exactly"""
    cleaned = text.strip().replace("−", "-")
    if not cleaned:
        raise ValueError("empty rational")
    try:
        return Fraction(cleaned)
    except (ValueError, ZeroDivisionError) as e:
        raise ValueError(f"not a rational number: {text!r}") from e


class _DensePolynomial:
    """Dense univariate polynomial, coefficient k multiplies x**k, trailing zeros trimmed"""

    __slots__ = ("_coeffs",)
    variable = "x"

    def __init__(self, coefficients: Iterable = ()):
        coeffs = [self._coerce_coefficient(c) for c in coefficients]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        self._coeffs = tuple(coeffs)

    # Subclasses define the coefficient ring
    @classmethod
    def _coerce_coefficient(cls, value):
        raise NotImplementedError

    @classmethod
    def _coefficient_zero(cls):
        return cls._coerce_coefficient(0)

    @classmethod
    def _coerce(cls, other):
        if isinstance(other, cls):
            return other
        try:
            return cls([cls._coerce_coefficient(other)])
        except TypeError:
            return NotImplemented

    @classmethod
    def zero(cls):
        return cls(())

    @classmethod
    def constant(cls, value):
        return cls([value])

    @classmethod
    def monomial(cls, degree: int, value=1):
        if degree < 0:
            raise ValueError("monomial degree must be non-negative")
        zero = cls._coefficient_zero()
        return cls([zero] * degree + [value])

    @property
    def coefficients(self) -> tuple:
        return self._coeffs

    @property
    def degree(self) -> int:
        return len(self._coeffs) - 1 if self._coeffs else DEGREE_OF_ZERO

    @property
    def is_zero(self) -> bool:
        return not self._coeffs

    @property
    def leading(self):
        if not self._coeffs:
            return self._coefficient_zero()
        return self._coeffs[-1]

    def coefficient(self, k: int):
        if 0 <= k < len(self._coeffs):
            return self._coeffs[k]
        return self._coefficient_zero()

    def __len__(self):
        return len(self._coeffs)

    def __iter__(self):
        return iter(self._coeffs)

    # Ring operations
    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        size = max(len(self._coeffs), len(other._coeffs))
        return type(self)(self.coefficient(k) + other.coefficient(k) for k in range(size))

    __radd__ = __add__

    def __neg__(self):
        return type(self)(-c for c in self._coeffs)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.is_zero or other.is_zero:
            return type(self).zero()
        zero = self._coefficient_zero()
        product = [zero] * (len(self._coeffs) + len(other._coeffs) - 1)
        for i, a in enumerate(self._coeffs):
            if a == 0:
                continue
            for j, c in enumerate(other._coeffs):
                product[i + j] = product[i + j] + a * c
        return type(self)(product)

    __rmul__ = __mul__

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError("only non-negative integer powers are supported")
        result = type(self).constant(1)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self._coeffs == other._coeffs

    def __hash__(self):
        if len(self._coeffs) <= 1:
            return hash(self.coefficient(0))
        return hash((type(self).__name__, self._coeffs))

    def derivative(self):
        """d/dx, lowering the degree by one"""
        return type(self)(c * k for k, c in enumerate(self._coeffs) if k > 0)


class BPoly(_DensePolynomial):
    """Polynomial in b with exact rational coefficients (index = power of b)"""

    __slots__ = ()
    variable = "b"

    @classmethod
    def _coerce_coefficient(cls, value):
        return as_rational(value)

    @classmethod
    def b(cls) -> "BPoly":
        return cls([0, 1])

    def scale(self, factor: Scalar) -> "BPoly":
        factor = as_rational(factor)
        return BPoly(c * factor for c in self._coeffs)

    def eval(self, b0: Scalar) -> Fraction:
        """Horner evaluation at an exact rational b0"""
        b0 = as_rational(b0)
        result = Fraction(0)
        for c in reversed(self._coeffs):
            result = result * b0 + c
        return result

    def eval_float(self, b0):
        """Horner evaluation at a float (or numpy array) b0"""
        result = np.zeros_like(np.asarray(b0, dtype=float))
        for c in reversed(self._coeffs):
            result = result * b0 + float(c)
        return float(result) if np.ndim(result) == 0 else result

    def to_float_coefficients(self) -> List[float]:
        return [float(c) for c in self._coeffs]

    def substitute_neg(self) -> "BPoly":
        """b -> -b"""
        return BPoly(c if k % 2 == 0 else -c for k, c in enumerate(self._coeffs))

    @property
    def nonzero_degrees(self) -> List[int]:
        return [k for k, c in enumerate(self._coeffs) if c != 0]

    @property
    def min_nonzero_degree(self) -> int:
        degrees = self.nonzero_degrees
        return degrees[0] if degrees else DEGREE_OF_ZERO

    def exact_div(self, divisor: "BPoly") -> "BPoly":
        """Quotient in Q[b]; raises InexactDivision if the remainder is nonzero"""
        divisor = BPoly._coerce(divisor)
        if divisor is NotImplemented or divisor.is_zero:
            raise InexactDivision("division by the zero polynomial")
        if self.is_zero:
            return BPoly.zero()
        remainder = list(self._coeffs)
        dd = divisor.degree
        lead = divisor.leading
        quotient = [Fraction(0)] * max(len(remainder) - dd, 1)
        for k in range(len(remainder) - 1 - dd, -1, -1):
            factor = remainder[k + dd] / lead
            quotient[k] = factor
            if factor:
                for j, c in enumerate(divisor.coefficients):
                    remainder[k + j] -= factor * c
        if any(remainder[:dd]):
            raise InexactDivision(f"({self}) is not divisible by ({divisor}) in Q[b]")
        return BPoly(quotient)

    def __str__(self):
        if self.is_zero:
            return "0"
        parts = []
        for k, c in enumerate(self._coeffs):
            if c == 0:
                continue
            magnitude = abs(c)
            if k == 0:
                body = str(magnitude)
            else:
                power = "b" if k == 1 else f"b^{k}"
                body = power if magnitude == 1 else f"{magnitude}*{power}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        first_sign, first_body = parts[0]
        text = ("-" if first_sign == "-" else "") + first_body
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text

    def __repr__(self):
        return f"BPoly({self})"


class SPoly(_DensePolynomial):
    """Polynomial in s = sin(chi) whose coefficients are BPoly (index = power of s)"""

    __slots__ = ()
    variable = "s"

    @classmethod
    def _coerce_coefficient(cls, value):
        if isinstance(value, BPoly):
            return value
        return BPoly.constant(as_rational(value))

    @classmethod
    def s(cls) -> "SPoly":
        return cls([0, 1])

    def scale(self, factor) -> "SPoly":
        """Multiply every coefficient by a BPoly or rational"""
        factor = self._coerce_coefficient(factor)
        return SPoly(c * factor for c in self._coeffs)

    def evaluate(self, s0: Scalar, b0: Scalar) -> Fraction:
        """Exact value at rational (s0, b0)"""
        s0 = as_rational(s0)
        result = Fraction(0)
        for c in reversed(self._coeffs):
            result = result * s0 + c.eval(b0)
        return result

    def evaluate_float(self, s, b0: float):
        """Float value at s (scalar or numpy array) for a float b0"""
        s = np.asarray(s, dtype=float)
        result = np.zeros_like(s)
        for c in reversed(self._coeffs):
            result = result * s + c.eval_float(float(b0))
        return float(result) if result.ndim == 0 else result

    def at_b(self, b0: Scalar) -> "SPoly":
        """Substitute an exact b0, leaving constant coefficients"""
        return SPoly(BPoly.constant(c.eval(b0)) for c in self._coeffs)

    def at_s(self, s0: Scalar) -> BPoly:
        """Substitute an exact s0, leaving a polynomial in b"""
        s0 = as_rational(s0)
        result = BPoly.zero()
        for c in reversed(self._coeffs):
            result = result.scale(s0) + c
        return result

    def reflect(self) -> "SPoly":
        """s -> -s"""
        return SPoly(c if k % 2 == 0 else -c for k, c in enumerate(self._coeffs))

    def substitute_b_neg(self) -> "SPoly":
        """b -> -b in every coefficient"""
        return SPoly(c.substitute_neg() for c in self._coeffs)

    @property
    def max_b_degree(self) -> int:
        return max((c.degree for c in self._coeffs), default=DEGREE_OF_ZERO)

    def __str__(self):
        if self.is_zero:
            return "0"
        terms = []
        for k, c in enumerate(self._coeffs):
            if c.is_zero:
                continue
            power = "" if k == 0 else ("*s" if k == 1 else f"*s^{k}")
            terms.append(f"({c}){power}")
        return " + ".join(terms)

    def __repr__(self):
        return f"SPoly({self})"


def triangular_change_of_basis(target: SPoly, basis: Sequence[SPoly]) -> List[BPoly]:
    """Coefficients e_k with sum(e_k * basis[k]) == target, by back-substitution.

    basis[k] must have s-degree exactly k. Every division is exact in Q[b].
    """
    if not basis:
        raise DegreeMismatch("empty basis")
    for k, element in enumerate(basis):
        if element.degree != k:
            raise DegreeMismatch(f"basis element {k} has degree {element.degree}")
    top = len(basis) - 1
    if target.degree > top:
        raise DegreeMismatch(f"target degree {target.degree} exceeds basis span {top}")

    coefficients = [BPoly.zero() for _ in basis]
    residual = target
    for k in range(top, -1, -1):
        r_k = residual.coefficient(k)
        if r_k.is_zero:
            continue
        e_k = r_k.exact_div(basis[k].leading)
        coefficients[k] = e_k
        residual = residual - basis[k].scale(e_k)
    if not residual.is_zero:
        raise InexactDivision(f"back-substitution left residual {residual}")
    return coefficients


def recombine(coefficients: Sequence[BPoly], basis: Sequence[SPoly]) -> SPoly:
    """sum(coefficients[k] * basis[k])"""
    total = SPoly.zero()
    for e_k, element in zip(coefficients, basis):
        total = total + element.scale(e_k)
    return total


# Serialization: BPoly <-> ["num/den", ...], SPoly <-> [[...], ...]

def bpoly_to_json(poly: BPoly) -> List[str]:
    return [format_rational(c) for c in poly.coefficients]


def bpoly_from_json(data: Sequence[str]) -> BPoly:
    return BPoly(parse_rational(str(item)) for item in data)


def spoly_to_json(poly: SPoly) -> List[List[str]]:
    return [bpoly_to_json(c) for c in poly.coefficients]


def spoly_from_json(data: Sequence[Sequence[str]]) -> SPoly:
    return SPoly(bpoly_from_json(item) for item in data)
