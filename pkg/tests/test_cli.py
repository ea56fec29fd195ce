import json

from pytest import approx, mark, raises

from constants import EXIT_MISMATCH, EXIT_OK, EXIT_USAGE, OUTPUT_DIR_ENV
from main import main

QUIET = ["--no-rich", "--quiet"]


def run(capsys, *argv):
    status = main(QUIET + list(argv))
    captured = capsys.readouterr()
    return status, captured.out, captured.err


def test_decompose_first_excited_state(capsys):
    status, out, _ = run(capsys, "decompose", "--N", "2", "--ell", "0")
    assert status == EXIT_OK
    payload = json.loads(out)
    assert payload["c"] == {"0": ["0/1", "-1/1"], "1": ["3/4"]}
    assert payload["schema"] == 1


def test_decompose_ground_state_at_exact_b(capsys):
    status, out, _ = run(capsys, "decompose", "--N", "2", "--ell", "0", "--b", "1/3")
    assert status == EXIT_OK
    payload = json.loads(out)
    assert payload["b"] == "1/3"
    assert payload["c_at_b"] == {"0": "-1/3", "1": "3/4"}

    status, out, _ = run(capsys, "decompose", "--N", "1", "--ell", "0")
    assert json.loads(out)["c"] == {"0": ["1/1"]}


def test_decompose_csv(capsys):
    status, out, _ = run(capsys, "--format", "csv", "decompose", "--N", "2", "--ell", "0", "--b-values", "0,0.5")
    assert status == EXIT_OK
    assert out.splitlines()[0] == "K,c(b=0.0),c(b=0.5)"


@mark.parametrize("argv", (
    ("decompose", "--N", "2", "--ell", "2"),
    ("decompose", "--N", "2", "--ell", "0", "--b", "one half"),
    ("audit", "--N", "2", "--grid", "8"),
))
def test_usage_errors_exit_two(capsys, argv):
    status, out, err = run(capsys, *argv)
    assert status == EXIT_USAGE
    assert out == ""
    assert "Usage error" in err


def test_argparse_rejects_missing_flags():
    with raises(SystemExit) as error:
        main(QUIET + ["decompose", "--N", "2"])
    assert error.value.code == 2


@mark.parametrize("which N ell b".split(),
                  (("polynomial", 2, 0, "1/2"),
                   ("commutator", 2, 0, "1/2"),
                   ("commutator", 3, 2, "0.7"),
                   ("gradient",   3, 1, "0.3"),
                   ("ledger",     4, 2, "0")))
def test_verify_targets_pass(capsys, which, N, ell, b):
    status, out, _ = run(capsys, "verify", "--which", which, "--N", str(N), "--ell", str(ell), "--b", b)
    assert status == EXIT_OK
    assert json.loads(out)["which"] == which


def test_printed_polynomial_mismatch_is_reported_not_fatal(capsys):
    status, out, _ = run(capsys, "verify", "--which", "polynomial", "--N", "2", "--ell", "0", "--b", "1/2")
    payload = json.loads(out)
    assert status == EXIT_OK
    assert payload["b"] == "1/2"
    assert payload["generalized_ok"] is True
    assert payload["literal_all_match"] is False


def test_spectrum_csv(capsys):
    status, out, _ = run(capsys, "--format", "csv", "spectrum", "--grid", "64", "--count", "1",
                         "--channel", "1", "--b", "0.7")
    assert status == EXIT_OK
    header, row = out.strip().splitlines()
    assert header == "index,eigenvalue_raw,eigenvalue_richardson,eigenvalue_exact"
    index, raw, extrapolated, exact = row.split(",")
    assert index == "0"
    assert float(exact) == 4.0
    assert float(raw) == approx(4.0, abs=1e-6)
    assert float(extrapolated) == approx(4.0, abs=1e-6)


def test_audit_passes_and_fails(capsys):
    status, out, _ = run(capsys, "audit", "--N", "2", "--b", "0.5", "--grid", "400", "--tolerance", "1e-3")
    assert status == EXIT_OK
    assert json.loads(out)["multiplicity"] == 4

    status, out, _ = run(capsys, "audit", "--N", "2", "--b", "1.7", "--grid", "64")
    assert status == EXIT_MISMATCH
    assert json.loads(out)["pass"] is False


def test_table_and_gram(capsys):
    status, out, _ = run(capsys, "table", "--N-max", "5")
    assert status == EXIT_OK
    assert json.loads(out)["pass"] is True

    status, out, _ = run(capsys, "gram", "--N-list", "1-3", "--b", "0.2")
    payload = json.loads(out)
    assert status == EXIT_OK
    assert payload["orthonormal"] is True
    assert len(payload["matrix"]) == 3


def test_output_directory_from_environment(capsys, monkeypatch, tmp_path):
    monkeypatch.setenv(OUTPUT_DIR_ENV, str(tmp_path / "artifacts"))
    status, out, _ = run(capsys, "decompose", "--N", "3", "--ell", "1")
    assert status == EXIT_OK
    assert out == ""
    payload = json.loads((tmp_path / "artifacts" / "decomposition.json").read_text())
    assert payload["N"] == 3 and payload["ell"] == 1


def test_explicit_output_file(capsys, tmp_path):
    target = tmp_path / "ledger.csv"
    status, out, _ = run(capsys, "--format", "csv", "--output", str(target),
                         "verify", "--which", "ledger", "--N", "3", "--ell", "0")
    assert status == EXIT_OK
    assert out == ""
    assert target.read_text().startswith("field,value\n")


def test_global_flags_after_the_subcommand(capsys):
    status, out, _ = run(capsys, "decompose", "--N", "1", "--ell", "0", "--format", "json")
    assert status == EXIT_OK
    assert json.loads(out)["c"] == {"0": ["1/1"]}

    status, out, _ = run(capsys, "decompose", "--N", "2", "--ell", "0", "--format", "csv")
    assert status == EXIT_OK
    assert out.splitlines()[0].startswith("K,")


def test_top_level_format_survives_the_subparser(capsys):
    status, out, _ = run(capsys, "--format", "csv", "decompose", "--N", "2", "--ell", "0")
    assert status == EXIT_OK
    assert out.splitlines()[0].startswith("K,")


def test_repeated_runs_are_byte_identical(capsys):
    argv = ("decompose", "--N", "4", "--ell", "1", "--b", "2/5", "--format", "json")
    _, first, _ = run(capsys, *argv)
    _, second, _ = run(capsys, *argv)
    assert first == second


def test_theme_and_table_style_flags(capsys):
    status = main(["--theme", "dark", "table", "--N-max", "3", "--table-style", "heavy"])
    captured = capsys.readouterr()
    assert status == EXIT_OK
    assert json.loads(captured.out)["pass"] is True
    assert "Closed-form rows" in captured.err


def test_artifact_location_is_reported(capsys, tmp_path):
    target = tmp_path / "split.json"
    status = main(["--no-rich", "decompose", "--N", "2", "--ell", "0", "--output", str(target)])
    captured = capsys.readouterr()
    assert status == EXIT_OK
    assert captured.out == ""
    assert f"Artifact written to {target}" in captured.err
    assert json.loads(target.read_text())["N"] == 2


def test_commutator_reports_route_agreement(capsys):
    status, out, _ = run(capsys, "verify", "--which", "commutator", "--N", "3", "--ell", "0", "--b", "0.5")
    payload = json.loads(out)
    assert status == EXIT_OK
    assert payload["routes_agree"] is True
    assert payload["expected_zero"] is False
