import json

from gl2cq.cli.report import CheckStatus, Report


def test_first_counterexample_is_kept():
    report = Report("verify-brackets")
    check = report.check("jacobi")

    assert check.record(True)
    assert not check.record(False)
    check.fail(x="E12[0,0]", lhs=1, rhs=0)
    check.record(False, x="E21[1,1]")

    assert (ret := check.status) is CheckStatus.FAILED, ret
    assert (ret := check.samples) == 3, ret
    assert (ret := check.counterexample) == {"x": "E12[0,0]", "lhs": "1", "rhs": "0"}, ret
    assert not report.passed
    assert (ret := report.failed_checks()) == [check], ret


def test_report_json():
    report = Report("form", {"seed": 0})
    report.check("hermitian").record(True)
    report.results["text"] = "mu"

    data = json.loads(report.dumps())
    assert (ret := list(data)) == ["command", "config", "checks", "elapsedMs", "results"], ret
    assert (ret := data["checks"]) == [{"name": "hermitian", "status": "passed", "samples": 1}], ret
    assert (ret := report.render_summary()[0].split()) == ["hermitian", "passed", "(1", "samples)"], ret
