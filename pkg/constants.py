#!/usr/bin/env python3
"""
Constants Module for the Scarf Hypersphere Verifier
Contains version metadata, default numerical settings and display styles

Version: 2.0.0 (Exact Decompositions + Spectral Audit)
Developer: 8roku8.hl
"""

# Version and metadata
VERSION = "2.0.0"
DEVELOPER = "8roku8.hl"
SCHEMA_VERSION = 1

# Environment variable naming the default output directory for artifacts
OUTPUT_DIR_ENV = "SCARF_VERIFY_OUTPUT_DIR"

# Exit codes
EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_USAGE = 2

SUBCOMMANDS = ("decompose", "table", "spectrum", "audit", "verify", "gram")
VERIFY_TARGETS = ("gradient", "commutator", "polynomial", "ledger")
OUTPUT_FORMATS = ("json", "csv")

# Spectral discretizations
SCHEME_DIRICHLET = "dirichlet"
SCHEME_GROUND_STATE = "ground_state"
SPECTRAL_SCHEMES = (SCHEME_DIRICHLET, SCHEME_GROUND_STATE)

# Quadrature measures
MEASURE_DCHI = "dchi"
MEASURE_COS_D = "cos_d"
MEASURES = (MEASURE_DCHI, MEASURE_COS_D)

# Default configuration (flags override every leaf)
DEFAULT_CONFIG = {
    "version": VERSION,
    "spectral": {
        "grid": 4000,                  # interior points of the coarse grid
        "min_grid": 16,
        "count": 3,                    # eigenvalues per channel
        "scheme": SCHEME_GROUND_STATE,
        "audit_tolerance": 1e-5,
        "bisection_rel_tol": 1e-12,
        "bisection_max_iter": 200,
        "max_workers": 1               # channel solves in parallel
    },
    "operators": {
        "grid": 200,                   # interior points for identity residuals
        "residual_tolerance": 1e-10,
        "commutator_zero_tolerance": 1e-10,
        "commutator_nonzero_floor": 1e-3
    },
    "quadrature": {
        "base_order": 128,
        "order_per_N": 32,
        "stability_tolerance": 1e-10,
        "newton_tolerance": 1e-15,
        "newton_max_iter": 100,
        "tanh_sinh_step": 1.0 / 64.0
    },
    "decomp": {
        "max_N": 12
    },
    "display_settings": {
        "use_rich_ui": True,
        "table_style": "rounded",
        "color_scheme": "default",
        "debug_mode": False,
        "quiet": False
    }
}

# Table styles for Rich UI
TABLE_STYLES = {
    "rounded": "ROUNDED",
    "simple": "SIMPLE",
    "double": "DOUBLE_EDGE",
    "heavy": "HEAVY",
    "minimal": "MINIMAL"
}

# Color themes for Rich UI
RICH_THEMES = {
    "default": {
        "header": "bold cyan",
        "success": "green",
        "warning": "yellow",
        "danger": "red",
        "info": "blue",
        "muted": "dim white"
    },
    "dark": {
        "header": "bold bright_cyan",
        "success": "bright_green",
        "warning": "bright_yellow",
        "danger": "bright_red",
        "info": "bright_blue",
        "muted": "dim"
    }
}

# Status icons shared by console messages
STATUS_ICONS = {
    "ok": "✅",
    "fail": "❌",
    "warn": "⚠️",
    "debug": "🔍",
    "run": "🔄",
    "info": "📋"
}
