import json

import pytest

from frobenii.cli import EXIT_BOUND, EXIT_INVALID, emit_report, main, run_command

MODULE_U = '{"field":"2:2","matrix":[["u"]]}'
NONUNIT = '{"field":"2:1","matrix":[["1","1"],["0","0"]]}'

FIXTURES = [
    ["field", "--field", "2:3", "--element", "u+1"],
    ["skew", "mul", "F", "u", "--field", "2:2"],
    ["skew", "div", "F^2", "F+u", "--field", "2:2"],
    ["skew", "gcd", "F^2+1", "F+1", "--field", "2:1"],
    ["skew", "mul", "F", "u", "--ring", "2:2:2"],
    ["roots", "--field", "2:1", "--skew", "F^2+F+1"],
    ["module", "unit", NONUNIT],
    ["module", "annihilator", MODULE_U, "--vector", "1"],
    ["module", "unitalize", NONUNIT],
    ["module", "hom", NONUNIT, "--target", NONUNIT, "--seed", "3"],
    ["rh", "cov", MODULE_U],
    ["rh", "inv", '{"base":"2:1","dim":2,"frobenius":[[0,1],[1,0]]}'],
    ["rh", "sol", MODULE_U, "--k", "2"],
    ["rh", "dual", '{"base":"2:1","factors":[1,2]}'],
    ["rh", "lang", '{"field":"2:1","matrix":[["1"]]}', "--vector", "1"],
    ["witt", "add", "1+t", "1-t", "--N", "3"],
    ["witt", "mul", "1-2t", "1-3t", "--N", "3", "--ring", "Z"],
    ["witt", "mul", "1+t", "1+u*t", "--N", "3", "--ring", "2:2"],
    ["witt", "ghost", "1-t-t^2", "--N", "4"],
    ["witt", "frob", "1-3t", "--n", "2", "--N", "4"],
    ["witt", "versch", "1-t", "--n", "2", "--N", "4"],
    ["witt", "rat2big", "1", "1+t", "--N", "3"],
    ["witt", "roots2coef", "2", "3"],
]


def _strip_timing(report):
    report = dict(report)
    report.pop("timing")
    return report


def test_parse_roots_f_minus_one():
    rep = run_command(["roots", "--field", "2:1", "--skew", "F-1"])
    assert rep["inputs"] == {"field": "2:1", "skew": "F+1"}  # -1 = +1 in characteristic 2
    assert rep["result"]["count"] == 2


def test_roots_report():
    rep = run_command(["roots", "--field", "2:1", "--skew", "F^2+F+1"])
    r = rep["result"]
    assert (r["count"], r["splitting_degree"], len(r["basis"])) == (4, 3, 2)


def test_syntax_error_column(capsys):
    assert main(["roots", "--field", "2:1", "--skew", "F^+"]) == EXIT_INVALID
    err = capsys.readouterr().err
    assert "column 30" in err
    line, caret = err.splitlines()[1:3]
    assert line.strip() == "frh roots --field 2:1 --skew F^+"
    # caret sits under the offending character of the joined command line
    assert caret.index("^") - 2 == 30 and line[2 + 30] == "^"


def test_syntax_error_column_with_equals_form(capsys):
    assert main(["roots", "--field", "2:1", "--skew=F^+"]) == EXIT_INVALID
    assert "column 30" in capsys.readouterr().err


def test_rh_cov_example():
    rep = run_command(["rh", "cov", MODULE_U])
    assert rep["result"]["rep"]["dim"] == 1


def test_witt_mul_example():
    assert run_command(["witt", "mul", "1-2t", "1-3t", "--N", "3", "--ring", "Z"])["result"]["product"] == "1-6*t"


def test_json_has_schema_version(capsys):
    assert main(["witt", "add", "1+t", "1+t", "--N", "2", "--json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["schema_version"] == 1
    assert doc["result"]["sum"] == "1+2*t+t^2"
    assert doc["provenance"]["version"]


def test_human_roots_lists_one_basis_element_per_line():
    text = emit_report(run_command(["roots", "--field", "2:1", "--skew", "F^2+F+1"]))
    lines = text.splitlines()
    i = lines.index("basis:")
    assert lines[i + 1].startswith("  ") and lines[i + 2].startswith("  ")
    assert lines[i + 3] == "roots:"


def test_errors_go_to_stderr_with_nonzero_exit(capsys):
    assert main(["module", "unit", '{"field":"2:1"}']) == EXIT_INVALID
    out = capsys.readouterr()
    assert out.out == "" and "frh: error" in out.err


def test_bound_exhaustion_exit_code(capsys):
    args = ["rh", "lang", '{"field":"5:1","matrix":[["1"]]}', "--vector", "1", "--max-degree", "4"]
    assert main(args) == EXIT_BOUND
    assert main(["roots", "--field", "2:1", "--skew", "F^2+F+1", "--max-degree", "2"]) == EXIT_BOUND


def test_unknown_subcommand_is_validation_error(capsys):
    assert main(["frobnicate"]) == EXIT_INVALID


def test_witt_cache_flag(tmp_path):
    rep = run_command(["witt", "mul", "1+t", "1+t", "--N", "5", "--ring", "3:1", "--witt-cache-dir", str(tmp_path)])
    assert rep["provenance"]["witt_cache_key"] == ["mul", 5]
    assert (tmp_path / "mul-N5.json").exists()


@pytest.mark.parametrize("argv", FIXTURES, ids=lambda a: " ".join(a[:2]))
def test_json_round_trip(argv):
    rep = run_command(argv)
    assert json.loads(emit_report(rep, "json")) == rep


@pytest.mark.parametrize("argv", FIXTURES, ids=lambda a: " ".join(a[:2]))
def test_determinism(argv):
    assert _strip_timing(run_command(argv)) == _strip_timing(run_command(argv))


def test_selftest_runs(capsys):
    code = main(["selftest", "--scale", "0.01", "--json"])
    doc = json.loads(capsys.readouterr().out)
    assert [c["number"] for c in doc["result"]["criteria"]] == list(range(1, 9))
    assert code == (0 if doc["result"]["passed"] else 1)
