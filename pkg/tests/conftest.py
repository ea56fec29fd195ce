import os
import sys

import pytest

# Modules live flat at the repository root and import each other by name
ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
if ROOT not in sys.path:
    sys.path.insert(0, ROOT)

from fractions import Fraction  # noqa: E402

from constants import DEFAULT_CONFIG, OUTPUT_DIR_ENV  # noqa: E402


@pytest.fixture
def half():
    return Fraction(1, 2)


@pytest.fixture
def plain_config():
    """Display settings for tests: no rich, nothing but failures on stderr"""
    return {"display_settings": dict(DEFAULT_CONFIG["display_settings"], use_rich_ui=False, quiet=True)}


@pytest.fixture(autouse=True)
def no_output_dir(monkeypatch):
    monkeypatch.delenv(OUTPUT_DIR_ENV, raising=False)
