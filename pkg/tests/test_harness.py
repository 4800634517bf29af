import json

import numpy as np
import pytest

from cstardecay import PipelineParams, PreconditionViolationError, emit, from_json, run_pipeline
from cstardecay.cli import main
from cstardecay.harness import VerificationReport, to_csv, to_json


@pytest.fixture(scope="module")
def ex4_report():
    return run_pipeline("ex4", "exp", "hermitian-bernstein", n=12, chi=(20.0,))


def test_ex4_row_decay_is_superexponential(ex4_report):
    r = ex4_report
    assert r.passed
    row, bound = r.entry_norms[0, :10], r.bounds[0, :10]
    assert np.all(np.diff(np.diff(np.log(row))) < 0)  # log-concave: faster than geometric
    assert np.allclose(np.diff(np.log(bound)), np.log(1 / 20))


def test_ex4bis_bounds_hold_but_are_loose():
    r = run_pipeline("ex4bis", "log_shift5", "hermitian-bernstein", n=20)
    assert r.passed
    row = 6  # 7th row
    far = np.arange(20) > row + 3
    assert np.min(r.bounds[row, far] / r.entry_norms[row, far]) > 5
    # E_3.5 reaches past the branch point of log(beta z + 5)
    r = run_pipeline("ex4bis", "log_shift5", "hermitian-bernstein", n=8, chi=(2.0, 3.5))
    assert r.parameters["chi"] == [2.0] and r.parameters["chi_rejected"] == [3.5]


def test_ex1_graph_bound_is_zero_below_diagonal():
    r = run_pipeline("ex1", "inverse_neumann", "graph", n=10)
    lower = np.tril_indices(10, -1)
    assert np.all(r.bounds[lower] == 0) and np.all(r.entry_norms[lower] == 0)
    assert r.passed and r.truncation_certificate == 0.0


def test_hermitian_bound_needs_hermitian_matrix():
    with pytest.raises(PreconditionViolationError):
        run_pipeline("ex6", "exp", "hermitian-bernstein", n=6)


def test_unknown_names():
    with pytest.raises(KeyError):
        run_pipeline("ex4", "sin")
    with pytest.raises(KeyError):
        run_pipeline("ex4", "exp", "faber")


def test_violation_ignores_zero_bounds():
    r = VerificationReport("x", "f", "k", {}, np.array([[1.0, 5.0], [0.0, 1.0]]),
                           np.array([[2.0, 0.0], [1.0, 2.0]]), 0.0, 0.0)
    from cstardecay.harness import _violation
    assert _violation(r.entry_norms, r.bounds) == 0.5


def test_csv_layout():
    r = run_pipeline("ex4", "exp", n=2)
    lines = to_csv(r).splitlines()
    assert lines[0] == "i,j,entry_norm,bound"
    assert len(lines) == 5
    i, j, norm, bound = lines[2].split(",")
    assert (i, j) == ("0", "1") and float(norm) == r.entry_norms[0, 1]


def test_json_roundtrip_and_determinism(tmp_path, ex4_report):
    text = to_json(ex4_report)
    assert from_json(text) == ex4_report
    again = run_pipeline("ex4", "exp", "hermitian-bernstein", n=12, chi=(20.0,))
    assert to_json(again) == text
    assert "runtime_ms" not in json.loads(text)
    assert "runtime_ms" in json.loads(to_json(ex4_report, timing=True))
    keys = list(json.loads(text))
    assert keys[:3] == ["matrix_id", "f_name", "bound_kind"]


def test_random_example_reports_are_byte_identical():
    a = to_json(run_pipeline("ex6", "exp", n=8, seed=4))
    b = to_json(run_pipeline("ex6", "exp", n=8, seed=4))
    c = to_json(run_pipeline("ex6", "exp", n=8, seed=5))
    assert a == b and a != c


def test_emit_files(tmp_path):
    r = run_pipeline("ex7a", "exp", n=4, seed=1)
    p1 = emit(r, "csv", tmp_path)
    p2 = emit(r, "json", tmp_path / "report.json")
    assert p1.name == "ex7a_exp_hermitian-bernstein.csv" and p1.exists()
    assert from_json(p2.read_text()) == r
    with pytest.raises(ValueError):
        emit(r, "xml", tmp_path)


def test_params_object_and_overrides():
    p = PipelineParams(n=6, chi=(2.0,))
    r = run_pipeline("ex4", "exp", params=p, strict=False)
    assert r.parameters["chi"] == [2.0] and r.parameters["strict"] is False


def test_cli_demo(tmp_path, capsys):
    assert main(["demo", "ex4", "--n", "6", "--chi", "2,5", "--out", str(tmp_path),
                 "--format", "json"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("PASS ex4")
    assert (tmp_path / "ex4_exp_hermitian-bernstein.json").exists()


def test_cli_exit_code_reflects_violation(capsys):
    assert main(["demo", "ex4", "--n", "6", "--f", "identity", "--chi", "5",
                 "--textbook-constants"]) == 1
    assert capsys.readouterr().out.startswith("FAIL")
    assert main(["demo", "ex4", "--n", "6", "--f", "identity", "--chi", "5"]) == 0


def test_cli_errors_and_list(capsys):
    assert main(["list"]) == 0
    assert "ex7b" in capsys.readouterr().out
    with pytest.raises(SystemExit):
        main(["demo", "ex9"])
    assert main(["demo", "ex6", "--n", "4", "--bound", "hermitian-bernstein"]) == 2
