from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st
from pytest import mark, raises

from closed_forms import CLOSED_FORM_ROWS, rows_for
from decomp import (
    DecompositionTable, check_indices, closed_form_sweep, coefficient_text, decomposition_sweep,
    degree_profile, jacobi_to_gegenbauer, numeric_reconstruction_check, parity_check,
    reconstruction_check, structure_report, table_to_csv, table_to_json, unperturbed_limit_check,
    verify_closed_forms
)
from exact_ring import BPoly

F = Fraction


def test_ground_row_is_a_single_harmonic():
    table = jacobi_to_gegenbauer(1, 0)
    assert dict(table.items()) == {0: BPoly([1])}
    assert table.to_json() == {"schema": 1, "N": 1, "ell": 0, "c": {"0": ["1/1"]}}


def test_first_excited_state_split():
    table = jacobi_to_gegenbauer(2, 0)
    assert table.coefficient(0) == BPoly([0, -1])
    assert table.coefficient(1) == F(3, 4)
    assert table.to_json()["c"] == {"0": ["0/1", "-1/1"], "1": ["3/4"]}


def test_second_excited_state_split():
    table = jacobi_to_gegenbauer(3, 0)
    assert table.coefficient(2) == F(5, 8)
    assert table.coefficient(1) == BPoly([0, -1])
    assert table.coefficient(0) == BPoly([0, 0, F(1, 2)])


@mark.parametrize("N", range(5, 13))
def test_closed_form_rows_reproduced(N):
    report = verify_closed_forms(N)
    assert report["rows"] == [row.label for row in CLOSED_FORM_ROWS]
    assert report["all_match"], [e for e in report["entries"] if not e["match"]]


@mark.parametrize("N expected_rows".split(),
                  ((1, 1),
                   (2, 2),
                   (3, 3),
                   (4, 4)))
def test_only_existing_rows_are_compared(N, expected_rows):
    assert len(rows_for(N)) == expected_rows
    assert verify_closed_forms(N)["all_match"]


def test_structural_sweep_up_to_twelve():
    sweep = decomposition_sweep(12)
    assert sweep["checked"] == 12 * 13 // 2
    assert sweep["all_pass"], sweep["failures"]


def test_parallel_sweep_matches_serial():
    assert decomposition_sweep(6, max_workers=4) == decomposition_sweep(6)


@settings(max_examples=30, deadline=None)
@given(st.data())
def test_reconstruction_for_random_targets(data):
    N = data.draw(st.integers(min_value=1, max_value=9))
    ell = data.draw(st.integers(min_value=0, max_value=N - 1))
    table = jacobi_to_gegenbauer(N, ell)
    assert reconstruction_check(table)
    assert unperturbed_limit_check(table)
    assert parity_check(table)
    assert numeric_reconstruction_check(table) < 1e-12


def test_degree_profile_lowest_component_of_fourth_row():
    profile = {entry["K"]: entry for entry in degree_profile(jacobi_to_gegenbauer(4, 0))}
    assert profile[0]["nonzero_degrees"] == [1, 3]
    assert profile[0]["max_degree"] == 3
    assert profile[0]["min_nonzero_degree"] == 1
    assert profile[0]["parity"] == "odd"
    assert profile[3]["max_degree"] == 0
    assert all(entry["within_bound"] and entry["parity_ok"] for entry in profile.values())


def test_degree_profile_third_row_middle_component():
    profile = {entry["K"]: entry for entry in degree_profile(jacobi_to_gegenbauer(3, 0))}
    assert profile[1]["nonzero_degrees"] == [1]
    assert profile[1]["parity"] == "odd"
    assert profile[0]["parity"] == "even"


def test_structure_report_fields():
    report = structure_report(5, 1)
    assert report["reconstruction"] and report["parity"]
    assert report["unperturbed_limit"] and report["degree_bound"]
    assert [entry["K"] for entry in report["profile"]] == [1, 2, 3, 4]


def test_closed_form_sweep_collects_every_N():
    sweep = closed_form_sweep(range(1, 6))
    assert [r["N"] for r in sweep["reports"]] == [1, 2, 3, 4, 5]
    assert sweep["all_match"]


def test_coefficient_text_symbolic_and_exact():
    table = jacobi_to_gegenbauer(2, 0)
    assert coefficient_text(table) == {0: "-b", 1: "3/4"}
    assert coefficient_text(table, F(1, 3)) == {0: "-1/3", 1: "3/4"}


def test_csv_rows_at_float_b():
    text = jacobi_to_gegenbauer(2, 0).to_csv([0.0, 0.5])
    lines = text.strip().split("\n")
    assert lines[0] == "K,c(b=0.0),c(b=0.5)"
    assert lines[1] == "0,0.0,-0.5"
    assert lines[2] == "1,0.75,0.75"


def test_table_is_immutable_and_complete():
    table = jacobi_to_gegenbauer(3, 1)
    with raises(TypeError):
        table.coefficients[1] = BPoly([0])
    with raises(ValueError):
        DecompositionTable(3, 1, {1: BPoly([1])})


@mark.parametrize("N ell error".split(),
                  ((0,   0, ValueError),
                   (3,   3, ValueError),
                   (3,  -1, ValueError),
                   (2.0, 0, TypeError)))
def test_index_checks(N, ell, error):
    with raises(error):
        check_indices(N, ell)


def test_module_level_serializers():
    table = jacobi_to_gegenbauer(3, 1)
    assert table_to_json(table) == table.to_json()
    assert table_to_csv(table, [0.25]) == table.to_csv([0.25])


@mark.parametrize("seed", (0, 1, 2024))
def test_numeric_reconstruction_is_seeded(seed):
    table = jacobi_to_gegenbauer(7, 2)
    first = numeric_reconstruction_check(table, samples=50, seed=seed)
    assert first == numeric_reconstruction_check(table, samples=50, seed=seed)
    assert first < 1e-11
