#!/usr/bin/env python3
"""
Utility Functions Module for the Scarf Hypersphere Verifier
Grids, parameter parsing, number formatting and artifact writing shared
across modules

Version: 2.0.0 (Exact Decompositions + Spectral Audit)
Developer: 8roku8.hl
"""

import csv
import io
import json
import math
import os
import sys
from fractions import Fraction
from typing import Any, Iterable, Optional, Sequence, Union

import numpy as np

from exact_ring import parse_rational


def interior_grid(M: int) -> np.ndarray:
    """chi_j = -pi/2 + j*pi/(M+1), j = 1..M (endpoints excluded)"""
    if M < 1:
        raise ValueError(f"grid needs at least one interior point (M={M})")
    return -math.pi / 2 + (math.pi / (M + 1)) * np.arange(1, M + 1)


def parse_b(text: str, exact: bool = False) -> Union[float, Fraction]:
    """Deformation parameter from a flag value: "p/q" or decimal.

    exact=True keeps it as a Fraction for the exact backends; otherwise a
    "p/q" string is converted to the nearest float.
    """
    if exact:
        return parse_rational(text)
    cleaned = text.strip().replace("−", "-")
    try:
        if "/" in cleaned:
            return float(parse_rational(cleaned))
        result = float(cleaned)
    except ValueError as e:
        raise ValueError(f"not a number: {text!r}") from e
    if not math.isfinite(result):
        raise ValueError(f"b must be finite, got {text!r}")
    return result


def parse_int_list(text: str) -> list:
    """ "1,2,3" or "1-4" -> [1, 2, 3(, 4)] """
    text = text.strip()
    if "-" in text and "," not in text:
        start, stop = (int(part) for part in text.split("-", 1))
        return list(range(start, stop + 1))
    return [int(part) for part in text.split(",") if part.strip()]


def format_float(value: Optional[float], digits: int = 12) -> str:
    if value is None:
        return "-"
    if not math.isfinite(value):
        return str(value)
    return f"{value:.{digits}g}"


def format_residual(value: Optional[float]) -> str:
    """Scientific notation for residuals, 0 stays 0"""
    if value is None:
        return "-"
    if value == 0:
        return "0"
    return f"{value:.3e}"


def to_jsonable(value: Any) -> Any:
    """numpy scalars/arrays and Fractions -> plain JSON types"""
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    if isinstance(value, np.ndarray):
        return [to_jsonable(v) for v in value.tolist()]
    if isinstance(value, np.bool_):
        return bool(value)
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.floating):
        return float(value)
    if isinstance(value, Fraction):
        return f"{value.numerator}/{value.denominator}"
    return value


def dumps_json(payload: Any) -> str:
    """Deterministic JSON text (fixed key order, trailing newline)"""
    return json.dumps(to_jsonable(payload), indent=2) + "\n"


def rows_to_csv(header: Sequence[str], rows: Iterable[Sequence[Any]]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([repr(v) if isinstance(v, float) else v for v in row])
    return buffer.getvalue()


def write_artifact(text: str, path: Optional[str] = None):
    """Write to path (creating its directory) or to stdout"""
    if path is None:
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    directory = os.path.dirname(path)
    if directory:
        os.makedirs(directory, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="") as f:
        f.write(text)
