#!/usr/bin/env python3
"""
Closed-Form Decomposition Rows for the Scarf Hypersphere Verifier
Transcribed mixing coefficients c_{K l}(b) for the four lowest rows
l = N-1 ... N-4, each as a function of N returning {K: BPoly}

These are the published values; decomp.verify_closed_forms compares them
against the exact decomposition instead of trusting either side.

Version: 2.0.0 (Exact Decompositions + Spectral Audit)
Developer: 8roku8.hl
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, List

from exact_ring import BPoly

F = Fraction


@dataclass(frozen=True)
class ClosedFormRow:
    offset: int                                   # l = N - offset
    label: str
    provenance: str
    coefficients: Callable[[int], Dict[int, BPoly]]

    def ell(self, N: int) -> int:
        return N - self.offset

    def applies_to(self, N: int) -> bool:
        return self.ell(N) >= 0


def _row_n_minus_1(N: int) -> Dict[int, BPoly]:
    return {N - 1: BPoly.constant(1)}


def _row_n_minus_2(N: int) -> Dict[int, BPoly]:
    return {
        N - 1: BPoly.constant(F(2 * N - 1, 4 * (N - 1))),
        N - 2: BPoly([0, -1]),
    }


def _row_n_minus_3(N: int) -> Dict[int, BPoly]:
    return {
        N - 1: BPoly.constant(F(2 * N - 1, 8 * (N - 2))),
        N - 2: BPoly([0, -F(N - 1, 2 * (N - 2))]),
        N - 3: BPoly([0, 0, F(1, 2)]),
    }


def _row_n_minus_4(N: int) -> Dict[int, BPoly]:
    return {
        N - 1: BPoly.constant(F(4 * (N - 1) ** 2 - 1, 32 * (N - 3) * (N - 2))),
        N - 2: BPoly([0, -F((2 * N - 3) * (N - 1), 8 * (N - 2) * (N - 3))]),
        N - 3: BPoly([0, 0, F(2 * N - 3, 8 * (N - 3))]),
        # -(b/24) [4 b^2 (N-2) + (2N-1)] / (N-2)
        N - 4: BPoly([0, -F(2 * N - 1, 24 * (N - 2)), 0, -F(4 * (N - 2), 24 * (N - 2))]),
    }


CLOSED_FORM_ROWS: List[ClosedFormRow] = [
    ClosedFormRow(1, "l=N-1", "unperturbed row: the state is a single rescaled harmonic",
                  _row_n_minus_1),
    ClosedFormRow(2, "l=N-2", "(2N-1)/(4(N-1)) S~_{(N-1)(N-2)} - b S~_{(N-2)(N-2)}",
                  _row_n_minus_2),
    ClosedFormRow(3, "l=N-3", "(2N-1)/(8(N-2)) S~ - (b/2)(N-1)/(N-2) S~ + (b^2/2) S~",
                  _row_n_minus_3),
    ClosedFormRow(4, "l=N-4", "(1/32)(4(N-1)^2-1)/((N-3)(N-2)) S~ - (b/8)(2N-3)(N-1)/((N-2)(N-3)) S~"
                  " + (b^2/8)(2N-3)/(N-3) S~ - (b/24)[4b^2(N-2)+(2N-1)]/(N-2) S~",
                  _row_n_minus_4),
]


def rows_for(N: int) -> List[ClosedFormRow]:
    """Rows that exist at this N (l >= 0)"""
    return [row for row in CLOSED_FORM_ROWS if row.applies_to(N)]
