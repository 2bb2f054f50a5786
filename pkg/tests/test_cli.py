import json

import numpy as np
import pytest

from digitrep import appendix
from digitrep.cli import main, parse_phase
from digitrep.linalg import loads_matrix, matrix_from_csv


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_symmetric_ternary_digit_matches_reference(capsys):
    code, out, _ = run(capsys, "operator", "--q", "3", "--n-minus", "0", "--n-plus", "1", "--d1-p", "-1",
                       "p_digit", "-1")
    assert code == 0
    expected = appendix.oracle_matrix("n1_symmetric", "p_-1")
    assert np.linalg.norm(loads_matrix(out) - expected) < 1e-12
    payload = json.loads(out)
    assert set(payload) == {"n", "ordering", "re", "im"} and payload["n"] == 3


def test_zero_shift_is_identity(capsys):
    code, out, _ = run(capsys, "operator", "--q", "3", "--n-plus", "1", "--format", "csv", "shift", "0")
    assert code == 0
    assert np.array_equal(matrix_from_csv(out), np.eye(9))


@pytest.mark.parametrize("name,arg", [("x", None), ("p", None), ("x_digit", "0"), ("projector", "1/2"),
                                      ("twisted_shift", "pi/2"), ("coefficients", "-1")])
def test_operator_names(capsys, name, arg):
    argv = ["operator", "--d1-x", "-1/2", name] + ([arg] if arg else [])
    code, out, _ = run(capsys, *argv)
    assert code == 0 and out.endswith("\n")


@pytest.mark.parametrize("argv", [
    ["operator", "p_digit", "99"],
    ["operator", "bogus"],
    ["operator", "shift"],
    ["operator", "x", "3"],
    ["operator", "shift", "1/3"],
    ["operator", "--q", "1", "x"],
    ["operator", "--format", "text", "x"],
    ["plot-data", "nope"],
    ["verify", "--max-n", "10"],
])
def test_usage_errors_exit_2(capsys, argv):
    try:
        code = main(argv)
    except SystemExit as exc:  # argparse rejects unknown choices itself
        code = exc.code
    _, err = capsys.readouterr()
    assert code == 2 and err


def test_verify_default_grid(capsys):
    code, out, _ = run(capsys, "verify")
    assert code == 0
    assert out.splitlines()[-1].endswith("checks passed")
    assert "INFO" in out


def test_verify_injected_fault(capsys):
    code, out, _ = run(capsys, "verify", "--radices", "2", "--max-n", "1", "--inject-fault")
    assert code == 1 and "FAIL" in out


def test_verify_golden_json(capsys):
    code, out, _ = run(capsys, "verify", "--golden", "appendix-a", "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["passed"] and any("DIVERGES" in line for line in payload["info"])


def test_plot_data_tables(capsys):
    code, out, _ = run(capsys, "plot-data", "--q", "2", "--n-minus", "2", "--n-plus", "1", "winding-momentum")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "segment,p,p_mod_1" and len(lines) == 1 + 8
    code, out, _ = run(capsys, "plot-data", "--n-plus", "2", "--s", "0", "--format", "json", "digit-lattice")
    payload = json.loads(out)
    assert payload["columns"] == ["x", "digit"] and len(payload["rows"]) == 8


def test_out_file(tmp_path, capsys):
    target = tmp_path / "x.json"
    code, out, _ = run(capsys, "operator", "--out", str(target), "x")
    assert code == 0 and out == ""
    assert np.array_equal(loads_matrix(target.read_text()), np.diag([1.5, 1.0, 0.5, 0.0]))


@pytest.mark.parametrize("argv", [
    ["operator", "--q", "3", "--n-plus", "2", "--d1-p", "-1", "p"],
    ["verify", "--radices", "2", "--max-n", "2", "--format", "csv"],
    ["plot-data", "--d1-min", "-1", "--steps", "3", "winding-d1"],
])
def test_deterministic_output(capsys, argv):
    _, first, _ = run(capsys, *argv)
    _, second, _ = run(capsys, *argv)
    assert first == second


def test_parse_phase():
    assert parse_phase("pi") == pytest.approx(np.pi)
    assert parse_phase("-pi/2") == pytest.approx(-np.pi / 2)
    assert parse_phase("3*pi/4") == pytest.approx(0.75 * np.pi)
    assert parse_phase("2pi") == pytest.approx(2 * np.pi)
    assert parse_phase("-1/2") == -0.5
    assert parse_phase("0.25") == 0.25
