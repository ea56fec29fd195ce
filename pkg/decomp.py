#!/usr/bin/env python3
"""
Decomposition Module for the Scarf Hypersphere Verifier
Exact split of Scarf I quasi-radial functions into rescaled hyperspherical
harmonics, plus structural audits against the closed-form table

phi_{N l} and S~_{K l} share the factor F^-1(chi) cos^l(chi), so the
wave-function decomposition is the polynomial identity
    P_{N-1-l}^{l-b+1/2, l+b+1/2}(s) = sum_K c_{K l}(b) C_{K-l}^{l+1}(s)
carried out in Q[b][s].

Version: 2.0.0 (Exact Decompositions + Spectral Audit)
Developer: 8roku8.hl
"""

import csv
import io
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from types import MappingProxyType
from typing import Dict, Iterable, List, Mapping, Optional, Sequence

import numpy as np

from closed_forms import rows_for
from constants import SCHEMA_VERSION
from exact_ring import BPoly, SPoly, bpoly_to_json, format_rational, recombine, triangular_change_of_basis
from orthopoly import gegenbauer_exact, jacobi_exact


def check_indices(N: int, ell: int):
    if not isinstance(N, int) or not isinstance(ell, int):
        raise TypeError("N and l must be integers")
    if N < 1:
        raise ValueError(f"principal quantum number must be >= 1 (N={N})")
    if not 0 <= ell <= N - 1:
        raise ValueError(f"need 0 <= l <= N-1 (N={N}, l={ell})")


@dataclass(frozen=True)
class DecompositionTable:
    """K -> c_{K l}(b) for K in [l, N-1]"""
    N: int
    ell: int
    coefficients: Mapping[int, BPoly] = field(default_factory=dict)

    def __post_init__(self):
        check_indices(self.N, self.ell)
        frozen = MappingProxyType(dict(sorted(self.coefficients.items())))
        object.__setattr__(self, "coefficients", frozen)
        expected = list(range(self.ell, self.N))
        if list(frozen) != expected:
            raise ValueError(f"table must hold exactly K = {self.ell}..{self.N - 1}")

    @property
    def n(self) -> int:
        """node count N - 1 - l"""
        return self.N - 1 - self.ell

    def coefficient(self, K: int) -> BPoly:
        return self.coefficients[K]

    def items(self):
        return self.coefficients.items()

    def basis(self) -> List[SPoly]:
        return gegenbauer_basis(self.N, self.ell)

    def as_floats(self, b0: float) -> Dict[int, float]:
        return {K: c.eval_float(b0) for K, c in self.coefficients.items()}

    def to_json(self) -> dict:
        return {
            "schema": SCHEMA_VERSION,
            "N": self.N,
            "ell": self.ell,
            "c": {str(K): bpoly_to_json(c) for K, c in self.coefficients.items()},
        }

    def to_csv(self, b_values: Sequence[float]) -> str:
        """Rows K, c_K(b) for every requested float b"""
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(["K"] + [f"c(b={b0!r})" for b0 in b_values])
        for K, c in self.coefficients.items():
            writer.writerow([K] + [repr(c.eval_float(b0)) for b0 in b_values])
        return buffer.getvalue()


def gegenbauer_basis(N: int, ell: int) -> List[SPoly]:
    """C_k^{l+1}, k = 0..N-1-l (graded by s-degree)"""
    return [gegenbauer_exact(k, ell + 1) for k in range(N - ell)]


def jacobi_to_gegenbauer(N: int, ell: int) -> DecompositionTable:
    """Exact c_{K l}(b) such that P_{N-1-l}^{alpha,beta} = sum_K c_{K l} C_{K-l}^{l+1}"""
    check_indices(N, ell)
    target = jacobi_exact(N - 1 - ell, ell)
    coefficients = triangular_change_of_basis(target, gegenbauer_basis(N, ell))
    return DecompositionTable(N, ell, {ell + k: c for k, c in enumerate(coefficients)})


# Structural checks

def reconstruction_check(table: DecompositionTable) -> bool:
    """sum_K c_K C_{K-l}^{l+1} == P_{N-1-l}^{alpha,beta} as an exact SPoly identity"""
    rebuilt = recombine(list(table.coefficients.values()), table.basis())
    return rebuilt == jacobi_exact(table.n, table.ell)


def numeric_reconstruction_check(table: DecompositionTable, samples: int = 20,
                                 seed: int = 0) -> float:
    """Worst relative deviation of both reconstruction sides at random float (s, b0)"""
    points = np.random.default_rng(seed).uniform(-1.0, 1.0, size=(samples, 2))
    target = jacobi_exact(table.n, table.ell)
    basis = table.basis()
    worst = 0.0
    for s0, b0 in points.tolist():
        lhs = target.evaluate_float(s0, b0)
        rhs = sum(c.eval_float(b0) * g.evaluate_float(s0, b0)
                  for c, g in zip(table.coefficients.values(), basis))
        scale = max(1.0, abs(lhs))
        worst = max(worst, abs(lhs - rhs) / scale)
    return worst


def unperturbed_limit_check(table: DecompositionTable) -> bool:
    """c_K(0) = 0 for K < N-1 while c_{N-1}(0) != 0"""
    for K, c in table.items():
        at_zero = c.eval(0)
        if K < table.N - 1 and at_zero != 0:
            return False
        if K == table.N - 1 and at_zero == 0:
            return False
    return True


def parity_check(table: DecompositionTable) -> bool:
    """c_K(-b) = (-1)^(N-1-K) c_K(b)"""
    for K, c in table.items():
        sign = -1 if (table.N - 1 - K) % 2 else 1
        if c.substitute_neg() != c.scale(sign):
            return False
    return True


def _parity_class(poly: BPoly) -> str:
    degrees = poly.nonzero_degrees
    if not degrees:
        return "zero"
    parities = {k % 2 for k in degrees}
    if parities == {0}:
        return "even"
    if parities == {1}:
        return "odd"
    return "mixed"


def degree_profile(table: DecompositionTable) -> List[dict]:
    """Per-K b-degree record; max degree must stay <= N-1-K with parity (-1)^(N-1-K)"""
    profile = []
    for K, c in table.items():
        bound = table.N - 1 - K
        expected_parity = "even" if bound % 2 == 0 else "odd"
        parity = _parity_class(c)
        profile.append({
            "K": K,
            "max_degree": c.degree,
            "min_nonzero_degree": c.min_nonzero_degree,
            "nonzero_degrees": c.nonzero_degrees,
            "parity": parity,
            "degree_bound": bound,
            "within_bound": c.degree <= bound,
            "parity_ok": parity == expected_parity,
        })
    return profile


def verify_closed_forms(N: int) -> dict:
    """Compare every closed-form row that exists at N with the exact decomposition"""
    entries = []
    for row in rows_for(N):
        ell = row.ell(N)
        computed = jacobi_to_gegenbauer(N, ell)
        expected = row.coefficients(N)
        for K in range(ell, N):
            want = expected.get(K, BPoly.zero())
            got = computed.coefficient(K)
            entries.append({
                "row": row.label,
                "ell": ell,
                "K": K,
                "expected": bpoly_to_json(want),
                "computed": bpoly_to_json(got),
                "match": want == got,
            })
    return {
        "schema": SCHEMA_VERSION,
        "N": N,
        "rows": [row.label for row in rows_for(N)],
        "entries": entries,
        "all_match": all(entry["match"] for entry in entries),
    }


def structure_report(N: int, ell: int) -> dict:
    """All structural checks for one (N, l)"""
    table = jacobi_to_gegenbauer(N, ell)
    profile = degree_profile(table)
    return {
        "N": N,
        "ell": ell,
        "reconstruction": reconstruction_check(table),
        "unperturbed_limit": unperturbed_limit_check(table),
        "parity": parity_check(table),
        "degree_bound": all(entry["within_bound"] for entry in profile),
        "profile": profile,
    }


def decomposition_sweep(max_N: int, max_workers: int = 1) -> dict:
    """Structural report for every 1 <= N <= max_N and 0 <= l <= N-1"""
    pairs = [(N, ell) for N in range(1, max_N + 1) for ell in range(N)]
    if max_workers > 1:
        with ThreadPoolExecutor(max_workers=max_workers) as executor:
            reports = list(executor.map(lambda p: structure_report(*p), pairs))
    else:
        reports = [structure_report(N, ell) for N, ell in pairs]
    keys = ("reconstruction", "unperturbed_limit", "parity", "degree_bound")
    failures = [r for r in reports if not all(r[k] for k in keys)]
    return {
        "schema": SCHEMA_VERSION,
        "max_N": max_N,
        "checked": len(reports),
        "failures": [{"N": r["N"], "ell": r["ell"], **{k: r[k] for k in keys}} for r in failures],
        "all_pass": not failures,
    }


def closed_form_sweep(N_values: Iterable[int]) -> dict:
    reports = [verify_closed_forms(N) for N in N_values]
    return {
        "schema": SCHEMA_VERSION,
        "reports": reports,
        "all_match": all(r["all_match"] for r in reports),
    }


def coefficient_text(table: DecompositionTable, b0: Optional[Fraction] = None) -> Dict[int, str]:
    """Human-readable coefficients, optionally evaluated at an exact b0"""
    if b0 is None:
        return {K: str(c) for K, c in table.items()}
    return {K: format_rational(c.eval(b0)) for K, c in table.items()}


def table_to_json(table: DecompositionTable) -> dict:
    return table.to_json()


def table_to_csv(table: DecompositionTable, b_values: Sequence[float]) -> str:
    return table.to_csv(b_values)
