import json

import pytest

from modexp.cli import main
from modexp.linalg import Mat
from modexp.xcurve import build_M
from test_xcurve import PRINTED_3_2


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_exponent_exact(capsys):
    code, out, _ = run(capsys, "exponent", "--p", "5", "--r", "1", "--N", "3", "--k", "1", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert (data["upper"], data["lower"], data["exact"]) == (10, 10, 10)
    assert data["certificate"]["family"] == "1:4,2:-2,3:-4"


def test_exponent_without_lower_bound(capsys):
    code, out, _ = run(capsys, "exponent", "--p", "3", "--r", "1", "--N", "4", "--k", "1")
    assert code == 0
    assert "upper bound  6" in out
    assert "lower bound  unavailable" in out


def test_exponent_k_scaling(capsys):
    code, out, _ = run(capsys, "exponent", "--p", "2", "--r", "2", "--N", "5", "--k", "2", "--format", "json")
    assert code == 0 and json.loads(out)["exact"] == 24


def test_exponent_cusp_form_section(capsys):
    code, out, _ = run(capsys, "exponent", "--p", "5", "--N", "3", "--cusp-forms")
    assert code == 0
    assert "Edixhoven comparison" in out and "ratio of leading terms   1" in out


@pytest.mark.parametrize("argv", [
    ["exponent", "--p", "4", "--N", "3"],
    ["exponent", "--p", "5", "--N", "10"],
    ["exponent", "--p", "5", "--N", "3", "--k", "0"],
    ["exponent", "--p", "5", "--N", "3", "--format", "csv"],
    ["matrix", "--p", "6"],
    ["klein", "check", "--p", "7", "--family", "9:1"],
    ["klein", "search", "--p", "7", "--max-support", "5"],
])
def test_invalid_arguments_exit_2(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2
    assert err.startswith("error:")


def test_argparse_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["matrix", "--p", "5", "--which", "X"])
    assert exc.value.code == 2


def test_matrix_M_printed_examples(capsys):
    code, out, _ = run(capsys, "matrix", "--p", "5", "--r", "1", "--which", "M", "--format", "csv")
    assert code == 0
    assert Mat.from_csv(out) == Mat.from_rows([[-5 if i == j else 1 for j in range(6)] for i in range(6)])
    code, out, _ = run(capsys, "matrix", "--p", "3", "--r", "2", "--format", "json")
    rows = [[int(x) for x in line.split()] for line in PRINTED_3_2.strip().splitlines()]
    assert Mat.from_json(json.loads(out)) == Mat.from_rows(rows) == build_M(3, 2)


def test_matrix_tinv(capsys):
    code, out, _ = run(capsys, "matrix", "--p", "2", "--r", "1", "--which", "Tinv", "--format", "csv")
    assert code == 0
    assert out.splitlines()[0].startswith("#") and "deg S(N)" in out.splitlines()[0]
    assert out.splitlines()[1:] == ["-2/3,-1/3", "-1/3,-2/3"]
    code, out, _ = run(capsys, "matrix", "--p", "2", "--r", "1", "--which", "Tinv")
    assert "deg S(N)" in out and "-2/3" in out


def test_klein_actions(capsys):
    code, out, _ = run(capsys, "klein", "check", "--p", "7", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["congruence"] and data["holomorphic"] and data["weight"] == 2
    code, out, _ = run(capsys, "klein", "valuation", "--p", "5", "--format", "json")
    assert json.loads(out) == {"family": "1:4,2:-2,3:-4", "closed": -10, "resultant": -10}
    code, out, _ = run(capsys, "klein", "qexp", "--p", "7", "--trunc", "6", "--format", "json")
    assert json.loads(out)["coeffs"][0] == "1"
    code, out, _ = run(capsys, "klein", "qexp", "--p", "5", "--trunc", "3", "--cusp", "zero")
    assert code == 0 and out.startswith("expansion at zero in q^(1/5)")
    code, out, _ = run(capsys, "klein", "order", "--p", "7", "--family", "3:-2,4:-2,5:2", "--format", "json")
    orders = {(row["g"], row["a"]): row["order"] for row in json.loads(out)}
    assert orders[(7, 1)] == "2" and orders[(1, 1)] == "0"
    code, out, _ = run(capsys, "klein", "search", "--p", "7", "--format", "json")
    assert {"family": "3:-2,4:-2,5:2", "valuationAtZero": -14} in json.loads(out)


@pytest.mark.parametrize("suite", ["xcurve", "klein"])
def test_verify_suites_pass(capsys, suite):
    code, out, _ = run(capsys, "verify", "--suite", suite)
    assert code == 0
    assert "all passed" in out and "FAIL " not in out


@pytest.mark.parametrize("argv", [
    ["exponent", "--p", "7", "--r", "1", "--N", "3", "--k", "2", "--format", "json"],
    ["matrix", "--p", "3", "--r", "2", "--which", "Tinv", "--format", "json"],
    ["klein", "qexp", "--p", "5", "--cusp", "zero", "--trunc", "8", "--format", "json"],
    ["klein", "search", "--p", "2", "--r", "2", "--max-support", "3", "--max-coeff", "3", "--format", "json"],
    ["verify", "--suite", "arith", "--format", "json"],
])
def test_json_output_is_byte_identical(capsys, argv):
    first = run(capsys, *argv)
    second = run(capsys, *argv)
    assert first == second
    json.loads(first[1])
