#!/usr/bin/env python3
"""
Configuration Management Module for the Scarf Hypersphere Verifier
Builds the run configuration from command-line flags layered over the
defaults in constants.py, and validates it before dispatch

No configuration file is read; flags are the only source of settings.

Version: 2.0.0 (Exact Decompositions + Spectral Audit)
Developer: 8roku8.hl
"""

import copy
import os
from typing import List, Optional

from constants import (
    DEFAULT_CONFIG, MEASURES, OUTPUT_DIR_ENV, OUTPUT_FORMATS, SPECTRAL_SCHEMES,
    SUBCOMMANDS, VERIFY_TARGETS
)
from errors import UsageError
from utils import parse_b, parse_int_list

# Subcommands whose backends are exact and accept b as a rational
EXACT_B_SUBCOMMANDS = ("decompose", "verify")

# Default artifact names used when only an output directory is known
ARTIFACT_NAMES = {
    "decompose": "decomposition",
    "table": "table_report",
    "spectrum": "spectrum",
    "audit": "degeneracy_audit",
    "verify": "verification",
    "gram": "gram_matrix",
}


def update_config_with_defaults(config):
    """Fill in any missing default values; returns True if anything was added"""
    updated = False

    def update_nested_dict(target, source):
        nonlocal updated
        for key, value in source.items():
            if key not in target:
                target[key] = copy.deepcopy(value)
                updated = True
            elif isinstance(value, dict) and isinstance(target[key], dict):
                update_nested_dict(target[key], value)

    update_nested_dict(config, DEFAULT_CONFIG)
    return updated


def _flag(args, name, default=None):
    return getattr(args, name, default)


def build_run_config(args) -> dict:
    """RunConfig dict from parsed argparse flags"""
    config = {"subcommand": _flag(args, "command")}
    update_config_with_defaults(config)

    display = config["display_settings"]
    display["debug_mode"] = bool(_flag(args, "debug", False))
    display["quiet"] = bool(_flag(args, "quiet", False))
    if _flag(args, "no_rich", False):
        display["use_rich_ui"] = False
    if _flag(args, "theme"):
        display["color_scheme"] = args.theme
    if _flag(args, "table_style"):
        display["table_style"] = args.table_style

    config["output"] = _flag(args, "output")
    config["format"] = _flag(args, "format") or "json"

    params = {}
    for name in ("N", "ell", "d", "channel", "count", "N_max", "which"):
        value = _flag(args, name)
        if value is not None:
            params[name] = value

    b_text = _flag(args, "b")
    if b_text is not None:
        params["b_text"] = b_text
        exact = config["subcommand"] in EXACT_B_SUBCOMMANDS
        try:
            params["b"] = parse_b(b_text, exact=exact)
        except ValueError as e:
            raise UsageError("--b", str(e)) from e

    b_values = _flag(args, "b_values")
    if b_values:
        try:
            params["b_values"] = [float(parse_b(text)) for text in b_values.split(",")]
        except ValueError as e:
            raise UsageError("--b-values", str(e)) from e

    N_list = _flag(args, "N_list")
    if N_list:
        try:
            params["N_list"] = parse_int_list(N_list)
        except ValueError as e:
            raise UsageError("--N-list", f"expected integers like 1,2,3 or 1-4 ({e})") from e

    if _flag(args, "grid") is not None:
        key = "operators" if config["subcommand"] in ("verify",) else "spectral"
        config[key]["grid"] = args.grid
    if _flag(args, "scheme"):
        config["spectral"]["scheme"] = args.scheme
    if _flag(args, "tolerance") is not None:
        config["spectral"]["audit_tolerance"] = args.tolerance
    if _flag(args, "workers") is not None:
        config["spectral"]["max_workers"] = args.workers
    if _flag(args, "measure"):
        params["measure"] = args.measure

    config["params"] = params
    return config


def validate_config(config) -> List[UsageError]:
    """Problems with the run configuration, each naming its flag (empty if valid)"""
    problems: List[UsageError] = []
    params = config.get("params", {})
    command = config.get("subcommand")

    if command not in SUBCOMMANDS:
        problems.append(UsageError("command", f"unknown subcommand {command!r}"))
        return problems
    if config.get("format") not in OUTPUT_FORMATS:
        problems.append(UsageError("--format", f"choose from {', '.join(OUTPUT_FORMATS)}"))

    N = params.get("N")
    if N is not None and N < 1:
        problems.append(UsageError("--N", f"must be >= 1, got {N}"))
    ell = params.get("ell")
    if ell is not None:
        if ell < 0:
            problems.append(UsageError("--ell", f"must be >= 0, got {ell}"))
        elif N is not None and N >= 1 and ell > N - 1:
            problems.append(UsageError("--ell", f"must satisfy ell <= N-1 = {N - 1}, got {ell}"))

    d = params.get("d")
    if d is not None and d < 1:
        problems.append(UsageError("--d", f"must be >= 1, got {d}"))
    channel = params.get("channel")
    if channel is not None and channel < 0:
        problems.append(UsageError("--channel", f"must be >= 0, got {channel}"))
    count = params.get("count")
    if count is not None and count < 1:
        problems.append(UsageError("--count", f"must be >= 1, got {count}"))
    N_max = params.get("N_max")
    if N_max is not None and N_max < 1:
        problems.append(UsageError("--N-max", f"must be >= 1, got {N_max}"))
    if params.get("which") is not None and params["which"] not in VERIFY_TARGETS:
        problems.append(UsageError("--which", f"choose from {', '.join(VERIFY_TARGETS)}"))
    if params.get("measure") is not None and params["measure"] not in MEASURES:
        problems.append(UsageError("--measure", f"choose from {', '.join(MEASURES)}"))
    N_list = params.get("N_list")
    if N_list is not None and (not N_list or min(N_list) < 1):
        problems.append(UsageError("--N-list", "needs principal numbers >= 1"))

    spectral = config["spectral"]
    if command in ("spectrum", "audit"):
        if spectral["grid"] < spectral["min_grid"]:
            problems.append(UsageError("--grid", f"must be >= {spectral['min_grid']}, got {spectral['grid']}"))
        if spectral["scheme"] not in SPECTRAL_SCHEMES:
            problems.append(UsageError("--scheme", f"choose from {', '.join(SPECTRAL_SCHEMES)}"))
        if spectral["audit_tolerance"] <= 0:
            problems.append(UsageError("--tolerance", "must be positive"))
        if spectral["max_workers"] < 1:
            problems.append(UsageError("--workers", "must be >= 1"))
    if command == "verify" and config["operators"]["grid"] < 1:
        problems.append(UsageError("--grid", "must be >= 1"))
    if command == "spectrum" and count is not None and count > spectral["grid"]:
        problems.append(UsageError("--count", f"cannot exceed --grid ({spectral['grid']})"))

    return problems


def resolve_output_path(config) -> Optional[str]:
    """--output, else a file under $SCARF_VERIFY_OUTPUT_DIR, else None (stdout)"""
    if config.get("output"):
        return config["output"]
    directory = os.environ.get(OUTPUT_DIR_ENV)
    if directory:
        name = ARTIFACT_NAMES.get(config.get("subcommand"), "artifact")
        return os.path.join(directory, f"{name}.{config.get('format', 'json')}")
    return None
