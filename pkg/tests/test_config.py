import json
import math
import os
from fractions import Fraction

import numpy as np
from pytest import approx, mark, raises

from config import (
    ARTIFACT_NAMES, build_run_config, resolve_output_path, update_config_with_defaults, validate_config
)
from constants import DEFAULT_CONFIG, OUTPUT_DIR_ENV, SCHEME_DIRICHLET
from errors import UsageError
from main import build_parser
from utils import (
    dumps_json, format_float, format_residual, interior_grid, parse_b, parse_int_list, rows_to_csv,
    write_artifact
)


def run_config(*argv):
    return build_run_config(build_parser().parse_args(list(argv)))


def flags(config):
    return [problem.flag for problem in validate_config(config)]


def test_update_config_with_defaults():
    config = {"spectral": {"grid": 64}}
    assert update_config_with_defaults(config)
    assert config["spectral"]["grid"] == 64
    assert config["spectral"]["count"] == DEFAULT_CONFIG["spectral"]["count"]
    assert config["quadrature"] == DEFAULT_CONFIG["quadrature"]
    assert not update_config_with_defaults(config)


def test_defaults_are_copied_not_shared():
    config = {}
    update_config_with_defaults(config)
    config["spectral"]["grid"] = 5
    assert DEFAULT_CONFIG["spectral"]["grid"] == 4000


def test_exact_b_for_exact_backends():
    config = run_config("decompose", "--N", "3", "--ell", "0", "--b", "1/2")
    assert config["params"]["b"] == Fraction(1, 2)
    assert config["params"]["b_text"] == "1/2"
    assert config["params"]["N"] == 3 and config["params"]["ell"] == 0


def test_float_b_for_numerical_backends():
    config = run_config("spectrum", "--b", "1/4", "--grid", "64", "--scheme", SCHEME_DIRICHLET)
    assert isinstance(config["params"]["b"], float)
    assert config["params"]["b"] == 0.25
    assert config["spectral"]["grid"] == 64
    assert config["spectral"]["scheme"] == SCHEME_DIRICHLET
    assert validate_config(config) == []


def test_verify_grid_goes_to_operator_settings():
    config = run_config("verify", "--which", "gradient", "--N", "3", "--ell", "1", "--grid", "50")
    assert config["operators"]["grid"] == 50
    assert config["spectral"]["grid"] == DEFAULT_CONFIG["spectral"]["grid"]


def test_display_flags():
    config = run_config("--no-rich", "--quiet", "--debug", "table", "--N-max", "3")
    display = config["display_settings"]
    assert display["use_rich_ui"] is False
    assert display["quiet"] and display["debug_mode"]
    assert config["params"]["N_max"] == 3


def test_bad_b_names_its_flag():
    with raises(UsageError) as error:
        run_config("decompose", "--N", "2", "--ell", "0", "--b", "half")
    assert error.value.flag == "--b"
    with raises(UsageError) as error:
        run_config("decompose", "--N", "2", "--ell", "0", "--b-values", "0,x")
    assert error.value.flag == "--b-values"
    with raises(UsageError) as error:
        run_config("gram", "--N-list", "a,b")
    assert error.value.flag == "--N-list"


@mark.parametrize("argv flag".split(),
                  ((("decompose", "--N", "2", "--ell", "2"),            "--ell"),
                   (("decompose", "--N", "0", "--ell", "0"),            "--N"),
                   (("audit", "--N", "2", "--grid", "8"),               "--grid"),
                   (("spectrum", "--grid", "32", "--count", "40"),      "--count"),
                   (("spectrum", "--d", "0", "--grid", "32"),           "--d"),
                   (("audit", "--N", "2", "--workers", "0"),            "--workers"),
                   (("audit", "--N", "2", "--tolerance", "-1"),         "--tolerance"),
                   (("gram", "--N-list", "0,1"),                        "--N-list"),
                   (("table", "--N-max", "0"),                          "--N-max")))
def test_validation_names_the_offending_flag(argv, flag):
    assert flag in flags(run_config(*argv))


def test_valid_configurations_pass():
    assert validate_config(run_config("decompose", "--N", "4", "--ell", "3")) == []
    assert validate_config(run_config("audit", "--N", "3", "--grid", "16")) == []
    assert validate_config(run_config("gram", "--N-list", "1-4", "--measure", "cos_d")) == []


def test_output_path_resolution(monkeypatch, tmp_path):
    config = run_config("decompose", "--N", "2", "--ell", "0")
    assert resolve_output_path(config) is None

    monkeypatch.setenv(OUTPUT_DIR_ENV, str(tmp_path))
    assert resolve_output_path(config) == os.path.join(str(tmp_path), f"{ARTIFACT_NAMES['decompose']}.json")

    csv_config = run_config("--format", "csv", "spectrum", "--grid", "32")
    assert resolve_output_path(csv_config).endswith("spectrum.csv")

    explicit = run_config("--output", "here.json", "decompose", "--N", "2", "--ell", "0")
    assert resolve_output_path(explicit) == "here.json"


def test_interior_grid_excludes_endpoints():
    grid = interior_grid(3)
    assert grid == approx([-math.pi / 4, 0.0, math.pi / 4], abs=1e-15)
    assert np.all(np.abs(interior_grid(1000)) < math.pi / 2)
    with raises(ValueError):
        interior_grid(0)


@mark.parametrize("text exact expected".split(),
                  (("0.5",   False, 0.5),
                   ("1/4",   False, 0.25),
                   ("−0.3",  False, -0.3),
                   ("1/3",   True,  Fraction(1, 3)),
                   ("0.3",   True,  Fraction(3, 10))))
def test_parse_b(text, exact, expected):
    value = parse_b(text, exact=exact)
    assert value == expected
    assert isinstance(value, Fraction if exact else float)


@mark.parametrize("text", ("nan", "inf", "b", "1/0"))
def test_parse_b_rejects(text):
    with raises(ValueError):
        parse_b(text)


def test_parse_int_list():
    assert parse_int_list("1-4") == [1, 2, 3, 4]
    assert parse_int_list("2, 5,7") == [2, 5, 7]
    with raises(ValueError):
        parse_int_list("x")


def test_number_formatting():
    assert format_float(None) == "-"
    assert format_float(4.0) == "4"
    assert format_float(float("inf")) == "inf"
    assert format_residual(0.0) == "0"
    assert format_residual(1.5e-12) == "1.500e-12"


def test_json_is_plain_and_deterministic():
    text = dumps_json({"c": Fraction(3, 4), "ok": np.bool_(True), "n": np.int64(2),
                       "v": np.array([0.5, 1.0]), 3: (1, 2)})
    assert text.endswith("\n")
    assert json.loads(text) == {"c": "3/4", "ok": True, "n": 2, "v": [0.5, 1.0], "3": [1, 2]}


def test_csv_keeps_full_float_precision():
    text = rows_to_csv(["index", "value"], [(0, 0.1 + 0.2)])
    assert text == "index,value\n0,0.30000000000000004\n"


def test_write_artifact(tmp_path, capsys):
    target = tmp_path / "nested" / "out.json"
    write_artifact("{}\n", str(target))
    assert target.read_text() == "{}\n"
    write_artifact("to stdout\n")
    assert capsys.readouterr().out == "to stdout\n"


def test_theme_and_table_style_reach_display_settings():
    config = run_config("--theme", "dark", "table", "--table-style", "minimal")
    assert config["display_settings"]["color_scheme"] == "dark"
    assert config["display_settings"]["table_style"] == "minimal"

    config = run_config("table")
    assert config["display_settings"]["color_scheme"] == DEFAULT_CONFIG["display_settings"]["color_scheme"]
    assert config["display_settings"]["table_style"] == DEFAULT_CONFIG["display_settings"]["table_style"]


@mark.parametrize("argv output fmt".split(),
                  ((("--format", "csv", "table"),                   None,       "csv"),
                   (("table", "--format", "csv"),                   None,       "csv"),
                   (("--format", "csv", "table", "--format", "json"), None,     "json"),
                   (("--output", "a.json", "table"),                "a.json",   "json"),
                   (("table", "--output", "b.csv", "--format", "csv"), "b.csv", "csv")))
def test_output_flags_on_either_side_of_the_subcommand(argv, output, fmt):
    config = run_config(*argv)
    assert config["output"] == output
    assert config["format"] == fmt


def test_display_manager_uses_selected_theme(capsys):
    from constants import RICH_THEMES
    from display import RichDisplayManager

    manager = RichDisplayManager(run_config("--no-rich", "--theme", "dark", "table", "--table-style", "heavy"))
    assert manager.theme == RICH_THEMES["dark"]
    assert manager.table_box == "HEAVY"
    manager.info("written")
    assert capsys.readouterr().err == "📋 written\n"
