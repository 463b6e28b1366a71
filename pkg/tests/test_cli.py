"""End-to-end tests of the command surface and its exit codes."""

import json

import pytest

from lex.main import EXIT_CHECK_FAILED, EXIT_OK, EXIT_USAGE, run


def test_repair_example(capsys):
    report, code = run(["codes", "repair-example"])
    assert code == EXIT_OK
    assert report.ok
    assert json.loads(capsys.readouterr().out)["command"] == "codes repair-example"


def test_three_way_count():
    report, code = run(["count", "--model", "aspec", "--N", "2", "--ell", "2", "--n", "3", "--method", "all"])
    assert code == EXIT_OK
    assert report.data["counts"]["3"] == {"brute": "56", "dp": "56", "formula": "56"}


def test_enumerate_csv(capsys):
    report, code = run(["enumerate", "--model", "aws", "--N", "1", "--n", "2", "--format", "csv"])
    assert code == EXIT_OK
    assert report.data["count"] == 7
    out = capsys.readouterr().out
    assert out.startswith("# words\nword\n")


def test_entropy_command():
    report, code = run(["entropy", "--model", "full", "--N", "2", "--n-max", "5"])
    assert code == EXIT_OK
    assert report.data["nonincreasing"] is True


@pytest.mark.parametrize(
    "argv",
    [
        ["codes", "build", "--family", "T", "--letters", "0,1,2", "--n", "10", "--members"],
        ["codes", "verify", "--family", "U", "--n-max", "8"],
        ["codes", "separate", "--letters", "0,1", "--n-max", "5", "--random", "3"],
        ["glue-aws", "--N", "2", "--trials", "50", "--words", "1,-2", "--n-max", "500"],
        ["glue-aws", "--N", "1", "--trials", "20", "--k", "2", "--n-max", "100"],
        ["hp-inequality", "--C", "1/2", "--n-max", "5000"],
        ["repair-aspec", "--N", "2", "--ell", "2", "--trials", "50", "--words", "2,-2,2"],
        ["alpha"],
        ["entropy-bound", "--n-max", "30"],
        ["measures", "--sizes", "2,3", "--n-max", "4", "--sample-length", "5000"],
    ],
)
def test_commands_pass(argv):
    report, code = run(argv)
    assert code == EXIT_OK, [check for check in report.checks if not check.passed]


def test_repair_transcript():
    report, _ = run(["repair-aspec", "--N", "2", "--ell", "2", "--trials", "5", "--words", "2,-2,2"])
    assert report.data["glued"] == "2 -1 2"
    assert report.data["distances"] == [0, 1, 0]


def test_usage_errors(capsys):
    assert run(["frobnicate"]) == (None, EXIT_USAGE)
    assert run(["count", "--model", "aws", "--bogus"]) == (None, EXIT_USAGE)
    assert "usage" in capsys.readouterr().err


def test_help_exits_cleanly():
    assert run(["--help"]) == (None, EXIT_OK)


def test_domain_errors_exit_2(capsys):
    assert run(["count", "--model", "aws", "--N", "0", "--n", "3"]) == (None, EXIT_USAGE)
    assert run(["entropy-bound", "--N", "2", "--ell", "2", "--n-max", "5"]) == (None, EXIT_USAGE)
    assert run(["glue-aws", "--N", "1", "--trials", "1", "--words", "11,1", "--gaps", "2"]) == (None, EXIT_USAGE)
    assert "entropy bound inapplicable" in capsys.readouterr().err


def test_failed_check_exits_1():
    report, code = run(["measures", "--sizes", "2", "--n-max", "2", "--sample-length", "1000", "--tolerance", "0"])
    assert code == EXIT_CHECK_FAILED
    assert not report.ok


def test_reports_are_deterministic(capsys):
    argv = ["glue-aws", "--N", "2", "--trials", "30", "--seed", "7", "--n-max", "200"]
    first, _ = run(argv)
    second, _ = run(argv)
    assert first.to_json() == second.to_json()


def test_out_writes_files(tmp_path):
    target = tmp_path / "count.json"
    report, code = run(["count", "--model", "aws", "--N", "1", "--n-max", "6", "--method", "all", "--out", str(target)])
    assert code == EXIT_OK
    assert json.loads(target.read_text())["ok"] is True
    assert (tmp_path / "count.counts.csv").exists()


def test_verify_all_quick():
    report, code = run(["verify", "all", "--quick", "--seed", "7", "--workers", "2"])
    assert code == EXIT_OK, [check for check in report.checks if not check.passed]
    names = [check.name for check in report.checks]
    assert "01_repair_example.repair" in names
    assert any(name.startswith("11_determinism.") for name in names)


@pytest.mark.parametrize(
    "argv",
    [
        ["glue-aws", "--N", "2", "--trials", "1", "--words", "1,1", "--gaps", "x"],
        ["count", "--model", "full", "--letters", "a,b", "--n", "2"],
        ["codes", "build", "--family", "T", "--letters", "0,x", "--n", "3"],
        ["measures", "--sizes", "2,two"],
    ],
)
def test_unparsable_lists_exit_2(argv, capsys):
    assert run(argv) == (None, EXIT_USAGE)
    assert "cannot parse" in capsys.readouterr().err


def test_code_export_keeps_header():
    report, code = run(["codes", "build", "--family", "V", "--letters", "0,1", "--n", "4", "--members"])
    assert code == EXIT_OK
    lines = report.tables["members"].splitlines()
    assert lines[0] == "family=V a=2 n=4 anchor=1 cardinality=4"
    assert lines[1:] == ["1100", "1101", "1110", "1111"]


def test_measures_exports_sampled_distribution():
    report, code = run(["measures", "--sizes", "2", "--n-max", "12", "--sample-length", "5000"])
    assert code == EXIT_OK
    assert report.data["marginal_levels"] == 12
    lines = report.tables["sample_n2"].splitlines()
    assert lines[0] == "word,weight_numerator,weight_denominator"
    assert [line.split(",")[0] for line in lines[1:]] == ["11", "12", "21", "22"]


def test_entropy_switches_to_log_space(monkeypatch):
    monkeypatch.setenv("LEX_MAX_N", "5")
    report, code = run(["entropy", "--model", "aws", "--N", "2", "--n-max", "8"])
    assert code == EXIT_OK
    assert report.data["log_space_from"] == 6
    assert report.data["nonincreasing"] is True
