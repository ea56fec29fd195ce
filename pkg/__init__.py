#!/usr/bin/env python3
"""
Scarf Hypersphere Verifier Package
Exact and numerical checks for the trigonometric Scarf I potential on S^{d+1}

Package Structure:
├── __init__.py              # This file - package initialization
├── main.py                  # argparse entry point and subcommand handlers
├── config.py                # Run configuration from flags + defaults
├── display.py               # Rich banner, status lines and tables (stderr)
├── constants.py             # Version, defaults, themes, exit codes
├── errors.py                # Exception hierarchy
├── utils.py                 # Grids, parsing, JSON/CSV artifact writing
├── exact_ring.py            # Q, Q[b], Q[b][s]
├── orthopoly.py             # Jacobi / Gegenbauer, exact and float
├── closed_forms.py          # Transcribed decomposition rows
├── decomp.py                # Jacobi -> Gegenbauer split and structural audits
├── spectral.py              # Tridiagonal schemes, Sturm bisection, degeneracy audit
├── operators.py             # State functions, transformed Casimir, polynomials
└── quadrature.py            # Gauss-Legendre / tanh-sinh and Gram matrices

Version: 2.0.0 (Exact Decompositions + Spectral Audit)
Developer: 8roku8.hl
"""

import os
import sys

# Modules import each other by plain name, as when run from this directory
_PACKAGE_DIR = os.path.dirname(os.path.abspath(__file__))
if _PACKAGE_DIR not in sys.path:
    sys.path.insert(0, _PACKAGE_DIR)

from constants import VERSION, DEVELOPER, DEFAULT_CONFIG  # noqa: E402

# Package metadata
__version__ = VERSION
__author__ = DEVELOPER
__description__ = "Verification engine for the Scarf I potential on hyperspheres"

__all__ = [
    'run',
    'VERSION',
    'DEVELOPER',
    'DEFAULT_CONFIG'
]


def run(argv=None):
    """Convenience function to run the command-line interface"""
    from main import main
    return main(argv)

# Module dependency overview:
"""
Dependency Flow:
main.py
├── config.py ── utils.py ── exact_ring.py
├── display.py
└── (per subcommand)
    ├── decomp.py ── orthopoly.py, closed_forms.py, exact_ring.py
    ├── spectral.py ── orthopoly.py
    ├── operators.py ── decomp.py, spectral.py
    └── quadrature.py ── operators.py
"""
