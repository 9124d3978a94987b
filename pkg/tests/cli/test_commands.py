import argparse
import json

import pytest

from gl2cq.algebra.scalar import ExactPoint, RootOfUnity
from gl2cq.cli import commands
from gl2cq.cli.commands import COMMAND_WHITELIST, CommandForm, CommandGram, run_command
from gl2cq.cli.config import CONFIG_ENVVAR, RunConfig
from gl2cq.module.gram import BasisBox


@pytest.fixture(autouse=True)
def no_config_envvar(monkeypatch):
    monkeypatch.delenv(CONFIG_ENVVAR, raising=False)


def read_report(path):
    with open(path, "r") as _f:
        return json.load(_f)


def test_box_arguments():
    box_cli = commands._BoxArgumentsCLI()

    parser = argparse.ArgumentParser()
    box_cli.add_box_arguments(parser)

    args = parser.parse_known_args(["--level", "2", "--box=-1..2"])
    assert (ret := box_cli.parse_box_args(args[0], RunConfig()).box) == BasisBox(2, -1, 2, -1, 2), ret

    args = parser.parse_known_args(["--positive", "2", "1"])
    assert (ret := box_cli.parse_box_args(args[0], RunConfig()).box) == BasisBox(1, -1, 1, -1, 1, True, 2, 1), ret


def test_numeric_arguments():
    numeric_cli = commands._NumericArgumentsCLI()

    parser = argparse.ArgumentParser()
    numeric_cli.add_numeric_arguments(parser)

    args = parser.parse_known_args(["--q-root", "3:8", "--mu", "1/4", "--tol", "1e-6"])
    numeric = numeric_cli.parse_numeric_args(args[0], RunConfig()).numeric
    assert (ret := numeric.q_value) == RootOfUnity(3, 8), ret
    assert (ret := numeric.mu_value) == 0.25, ret
    assert (ret := numeric.tolerance) == 1e-6, ret

    args = parser.parse_known_args(["--q-exact", "-1"])
    assert (ret := numeric_cli.parse_numeric_args(args[0], RunConfig()).numeric.q_value) is ExactPoint.MINUS_ONE, ret

    with pytest.raises(SystemExit):
        parser.parse_args(["--q-exact", "i", "--q-root", "1:8"])


def test_whitelist():
    assert (ret := len(COMMAND_WHITELIST)) == 9, ret
    assert (ret := COMMAND_WHITELIST.get("scan-mu").cls) is commands.CommandScanMu, ret
    assert (ret := COMMAND_WHITELIST.get("scan_mu").cls) is commands.CommandScanMu, ret
    assert COMMAND_WHITELIST.get("scan") is None


def test_form(capsys, report_path):
    assert (ret := run_command(["form", "--f", "x[0,0]^2", "--g", "1", "--output", report_path])) == 0, ret
    assert (ret := capsys.readouterr().out.splitlines()[0]) == "0", ret

    report = read_report(report_path)
    assert (ret := report["command"]) == "form", ret
    assert (ret := report["results"]["text"]) == "0", ret
    assert (ret := report["results"]["method"]) == "recursive", ret


@pytest.mark.parametrize("method", ["recursive", "push", "jk"])
def test_form_with_constant_x(method, capsys, report_path):
    argv = ["form", "--f", "x[0,0]^2", "--g", "1", "--x-constant", "2", "3", "1/2", "--method", method, "--output", report_path]

    assert (ret := run_command(argv)) == 0, ret
    assert (ret := capsys.readouterr().out.splitlines()[0]) == "-6", ret


def test_form_level_two(capsys, report_path):
    argv = ["form", "--f", "x[1,0]*x[0,1]", "--g", "x[0,1]*x[1,0]", "--output", report_path]

    assert (ret := run_command(argv)) == 0, ret
    assert (ret := capsys.readouterr().out.splitlines()[0]) == "mu^2 + 2*mu", ret


@pytest.mark.parametrize(
    "argv", [
        ["form", "--f", "x[0,0", "--g", "1"],
        ["form", "--f", "1", "--g", "1", "--x-constant", "2", "0", "1"],
        ["form", "--f", "1"],
        ["gram", "--q-exact", "2"],
        ["gram", "--box", "2..1"],
        ["gram", "--workers", "0"],
        ["verify-brackets", "--samples", "0"],
        ["unknown-command"],
        [],
    ])
def test_usage_errors(argv, capsys, report_path):
    assert (ret := run_command(argv + (["--output", report_path] if argv else []))) == 2, ret


def test_syntax_error_message(capsys, report_path):
    run_command(["form", "--f", "x[0,0", "--g", "1", "--output", report_path])

    assert "error: Syntax error at column 6: expected ']'.\n" in (ret := capsys.readouterr().err), ret


def test_help(capsys):
    assert (ret := run_command(["--help"])) == 0, ret
    out = capsys.readouterr().out
    for info in COMMAND_WHITELIST:
        assert info.name in out


def test_config_file(capsys, tmp_path, test_data_location):
    output = str(tmp_path / "report.json")
    argv = ["form", "--f", "x[0,0]^2", "--g", "1", "--config", test_data_location + "constant_x.json", "--output", output]

    assert (ret := run_command(argv)) == 0, ret
    assert (ret := capsys.readouterr().out.splitlines()[0]) == "-6", ret
    assert (ret := read_report(output)["config"]["seed"]) == 7, ret


def test_scan_mu(capsys, report_path):
    argv = ["scan-mu", "--level", "1", "--mu=-1,0,1", "--q-exact", "i", "--output", report_path]

    assert (ret := run_command(argv)) == 0, ret
    assert (ret := capsys.readouterr().out.splitlines()[:3]) == ["mu=-1: indefinite", "mu=0: PSD-degenerate", "mu=1: PD"], ret

    report = read_report(report_path)
    assert (ret := [row["verdict"] for row in report["results"]["rows"]]) == ["indefinite", "PSD-degenerate", "PD"], ret
    assert (ret := report["results"]["boundary"]) == ["0"], ret
    assert report["results"]["consistent"]
    assert (ret := [(check["name"], check["status"]) for check in report["checks"]]) == [
        ("unitarity", "passed"), ("determinant-agreement", "passed")], ret


def test_scan_mu_reports_computed_verdicts(capsys, report_path):
    argv = ["scan-mu", "--level", "2", "--box=-1..1", "--mu=-1,1", "--q-exact", "i", "--output", report_path]

    assert (ret := run_command(argv)) == 1, ret
    assert (ret := capsys.readouterr().out.splitlines()[:2]) == ["mu=-1: indefinite", "mu=1: indefinite"], ret

    report = read_report(report_path)
    assert not report["results"]["consistent"]
    assert (ret := report["results"]["mispredicted"]) == ["1"], ret
    assert (ret := [check["name"] for check in report["checks"]]) == ["unitarity"], ret
    assert (ret := report["checks"][0]["counterexample"]) == {"mu": "1", "verdict": "indefinite", "expected": "PD"}, ret


def test_scan_mu_numeric(report_path, tmp_path):
    csv_path = str(tmp_path / "scan.csv")
    argv = ["scan-mu", "--level", "2", "--box", "0..1", "--mu=-1,1/4", "--q-root", "1:8", "--csv", csv_path, "--output", report_path]

    assert (ret := run_command(argv)) == 0, ret
    assert (ret := read_report(report_path)["results"]["boundary"]) == [], ret
    with open(csv_path) as _f:
        lines = _f.read().splitlines()
    assert (ret := lines[0]) == "mu,verdict,minEigenvalueOrMinor", ret
    assert (ret := [line.split(",")[1] for line in lines[1:]]) == ["indefinite", "PD"], ret


def test_gram(capsys, report_path, tmp_path):
    csv_path = str(tmp_path / "gram.csv")
    argv = ["gram", "--level", "1", "--box", "0..1", "--q-exact", "1", "--mu", "2", "--csv", csv_path, "--output", report_path]

    assert (ret := run_command(argv)) == 0, ret
    assert (ret := capsys.readouterr().out.splitlines()[0]) == "dimension 4, PD at the configured (q, mu)", ret
    with open(csv_path) as _f:
        assert (ret := _f.read()) == "2,0,0,0\n0,2,0,0\n0,0,2,0\n0,0,0,2\n", ret

    report = read_report(report_path)
    assert (ret := report["results"]["basis"]) == [[[0, 0]], [[0, 1]], [[1, 0]], [[1, 1]]], ret
    assert (ret := report["results"]["positivity"]["verdict"]) == "PD", ret


def test_gram_indefinite_is_not_a_failure(capsys, report_path):
    argv = ["gram", "--level", "2", "--box", "0..1", "--mu=-1", "--workers", "2", "--output", report_path]

    assert (ret := run_command(argv)) == 0, ret
    assert (ret := capsys.readouterr().out.splitlines()[0]) == "dimension 10, indefinite at the configured (q, mu)", ret


@pytest.mark.parametrize(
    "argv", [
        ["verify-brackets", "--samples", "2"],
        ["verify-brackets", "--samples", "1", "--x-constant", "2", "3", "1/2"],
        ["verify-involution", "--samples", "5"],
        ["verify-contravariance", "--samples", "2", "--box", "0..1"],
        ["verify-contravariance", "--samples", "1", "--box", "0..1", "--x-constant", "2", "1", "1/2"],
        ["verify-highest-weight", "--samples", "5"],
        ["verify-translation", "--level", "2", "--box", "0..1", "--shift", "2", "-1"],
        ["oracle-compare", "--level", "2", "--box", "0..1", "--samples", "2"],
        ["oracle-compare", "--level", "2", "--box=-1..0", "--jk-max-level", "1", "--x-constant", "2", "3", "1/2"],
    ])
def test_suites_pass(argv, capsys, report_path):
    assert (ret := run_command(argv + ["--output", report_path])) == 0, capsys.readouterr()

    report = read_report(report_path)
    assert report["checks"]
    for check in report["checks"]:
        assert (ret := check["status"]) == "passed", check
        assert "counterexample" not in check


def test_oracle_compare_checks(report_path):
    run_command(["oracle-compare", "--level", "2", "--box", "0..1", "--samples", "2", "--output", report_path])
    report = read_report(report_path)

    assert (ret := [check["name"] for check in report["checks"]]) == [
        "three-method-agreement", "leading-term", "level-orthogonality", "level-one-gram", "level-one-monomials",
    ], ret
    assert (ret := report["results"]["jkMaxLevel"]) == 2, ret


def test_reports_are_deterministic(report_path):
    argv = ["verify-involution", "--samples", "4", "--seed", "11", "--no-timing", "--output", report_path]

    assert (ret := run_command(argv)) == 0, ret
    with open(report_path, "rb") as _f:
        first = _f.read()

    assert (ret := run_command(argv)) == 0, ret
    with open(report_path, "rb") as _f:
        second = _f.read()

    assert first == second
    assert (ret := json.loads(first)["elapsedMs"]) == 0, ret


def test_failed_check_exit_code(monkeypatch, capsys, report_path):
    monkeypatch.setattr(commands, "check_jacobi", lambda x, y, z: False)

    assert (ret := run_command(["verify-brackets", "--samples", "2", "--output", report_path])) == 1, ret

    jacobi = read_report(report_path)["checks"][0]
    assert (ret := jacobi["name"]) == "jacobi", ret
    assert (ret := jacobi["status"]) == "failed", ret
    assert (ret := jacobi["samples"]) == 2, ret
    assert (ret := sorted(jacobi["counterexample"])) == ["lhs", "rhs", "x", "y", "z"], ret
    assert "jacobi" in capsys.readouterr().out


def test_unwritable_report(tmp_path):
    output = str(tmp_path / "missing" / "report.json")

    assert (ret := run_command(["form", "--f", "1", "--g", "1", "--output", output])) == 2, ret


def test_command_classes_build_parsers():
    assert (ret := CommandForm().parser.prog) == "gl2cq form", ret
    assert "--q-exact" in CommandGram().parser.format_help()
