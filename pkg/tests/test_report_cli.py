import csv
import io
import json

import pytest

from harmzeta import cli
from harmzeta.errors import DomainError, NonConvergence, TailBoundViolation, ToleranceUnreachable
from harmzeta.numerics import EvalResult
from harmzeta.report import (
    CSV_COLUMNS,
    FAIL,
    PASS,
    GenfunReport,
    IdentityReport,
    SuiteReport,
    load_json,
    render,
    to_csv,
    to_json,
)
from harmzeta.suites import DEFAULT_SEED, RunConfig, run_suites


def _rep(ident, diff, tol=1e-9):
    return IdentityReport.compare(ident, EvalResult(1.0 + diff, 0.0, 1, "l"),
                                  EvalResult(1.0, 0.0, 1, "r"), tol)


# -- report types --------------------------------------------------------------------------


def test_identity_report_status_follows_tolerance():
    assert _rep("a", 1e-10).status == PASS
    assert _rep("a", 1e-8).status == FAIL
    assert _rep("a", 1e-8).abs_diff == pytest.approx(1e-8)


def test_suite_report_counts_and_sorting():
    rep = SuiteReport("s", [_rep("b", 0.0), _rep("a", 1.0)])
    assert [r.identity_id for r in rep.results] == ["a", "b"]
    assert rep.pass_count + rep.fail_count == len(rep.results)
    assert rep.fail_count == 1 and not rep.passed


def test_genfun_report_aggregate():
    pts = [(1.0, 0.5, _rep("p1", 1e-12)), (2.0, 1.0, _rep("p2", 5e-10))]
    g = GenfunReport.aggregate("eq8", 1e-9, pts, [(3.0, 3.0, "outside")])
    assert g.worst_pair == (2.0, 1.0)
    assert g.max_abs_diff == pytest.approx(5e-10)
    assert g.passed and g.skipped


def test_json_round_trip_preserves_classification():
    report = run_suites(RunConfig(suites=["identities"]))
    text = to_json(report)
    data = json.loads(text)
    assert set(data) >= {"suite", "config", "results", "wall_ms"}
    assert set(data["results"][0]) == {"id", "lhs", "rhs", "abs_diff", "tol", "status"}
    again = load_json(text)
    assert [(r.identity_id, r.status) for r in again.results] == \
        [(r.identity_id, r.status) for r in report.results]
    assert load_json(to_json(again)).results == again.results


def test_json_round_trip_of_a_failure():
    report = SuiteReport("s", [_rep("x", 1.0)])
    assert load_json(to_json(report)).results[0].status == FAIL


def test_csv_columns():
    report = SuiteReport("s", [_rep("a", 0.0), _rep("b", 1e-3)])
    rows = list(csv.DictReader(io.StringIO(to_csv(report))))
    assert tuple(rows[0]) == CSV_COLUMNS
    assert [r["status"] for r in rows] == [PASS, FAIL]
    assert float(rows[1]["abs_diff"]) == pytest.approx(1e-3)


def test_render_rejects_unknown_format():
    with pytest.raises(ValueError):
        render(SuiteReport("s", []), "xml")


def test_text_report_mentions_counts():
    text = render(SuiteReport("s", [_rep("a", 0.0)], skipped=[("b", "why")]), "text")
    assert "1 passed, 0 failed" in text and "SKIP" in text


# -- RunConfig ----------------------------------------------------------------------------


def test_run_config_defaults_and_validation():
    cfg = RunConfig()
    assert cfg.tolerance == 1e-9 and cfg.max_terms == 100_000 and cfg.seed == DEFAULT_SEED
    for bad in (dict(tolerance=1e-13), dict(max_terms=99), dict(suites=["nope"]),
                dict(output_format="xml")):
        with pytest.raises(DomainError):
            RunConfig(**bad)


def test_runs_are_deterministic():
    cfg = RunConfig(suites=["transforms"])
    a, b = run_suites(cfg), run_suites(cfg)
    assert to_csv(a) == to_csv(b)


# -- CLI --------------------------------------------------------------------------------------


def test_compute_all_routes(capsys):
    assert cli.main(["compute", "M", "--method", "all", "--format", "json"]) == cli.EXIT_OK
    data = json.loads(capsys.readouterr().out)
    values = [r["value"] for r in data["rows"]]
    assert len(values) >= 10
    assert max(values) - min(values) <= 2e-9


def test_compute_m1_single_route(capsys):
    assert cli.main(["compute", "M1", "--method", "prop3.l", "--format", "csv"]) == cli.EXIT_OK
    rows = list(csv.DictReader(io.StringIO(capsys.readouterr().out)))
    assert len(rows) == 1
    assert 0 <= float(rows[0]["value"]) - 0.86062 < 1e-5


def test_usage_errors_exit_2(capsys, tmp_path):
    assert cli.main(["compute", "M", "--method", "nosuch"]) == cli.EXIT_USAGE
    assert cli.main(["verify", "--suite", "nosuch"]) == cli.EXIT_USAGE
    assert cli.main(["verify", "--tol", "1e-13"]) == cli.EXIT_USAGE
    assert cli.main(["grid", "eq99"]) == cli.EXIT_USAGE
    assert cli.main(["grid", "eq8", "--xfrac", "1.5"]) == cli.EXIT_USAGE
    assert cli.main(["frobnicate"]) == cli.EXIT_USAGE
    bad = tmp_path / "bad.json"
    bad.write_text('{"colour": "blue"}')
    assert cli.main(["verify", "--config", str(bad)]) == cli.EXIT_USAGE
    capsys.readouterr()


def test_verify_bounds_and_all(capsys):
    assert cli.main(["verify", "--suite", "bounds"]) == cli.EXIT_OK
    assert "suite bounds" in capsys.readouterr().out
    assert cli.main(["verify", "--suite", "all", "--tol", "1e-9"]) == cli.EXIT_OK
    capsys.readouterr()


def test_verify_genfun_csv_to_file(tmp_path):
    out = tmp_path / "r.csv"
    assert cli.main(["verify", "--suite", "genfun", "--format", "csv", "--out", str(out)]) == 0
    rows = list(csv.DictReader(out.open()))
    assert tuple(rows[0]) == CSV_COLUMNS
    assert len(rows) > 100
    assert all(r["status"] == PASS for r in rows)


def test_config_file_with_flag_override(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"tolerance": 1e-9, "suites": ["core"], "output_format": "json"}))
    assert cli.main(["verify", "--config", str(cfg)]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["suite"] == "core" and data["config"]["tolerance"] == 1e-9
    assert cli.main(["verify", "--config", str(cfg), "--tol", "1e-8", "--suite", "bounds"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["config"]["tolerance"] == 1e-8 and data["suite"] == "bounds"


def test_grid_examples(capsys):
    assert cli.main(["grid", "eq8", "--a", "1,2", "--xfrac", "0.5,0.9", "--format", "json"]) == 0
    assert len(json.loads(capsys.readouterr().out)["results"]) == 4
    assert cli.main(["grid", "eq13", "--a", "1", "--xfrac", "0.99", "--format", "json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["results"][0]["id"] == "eq13@a=1,x=1.98"
    assert cli.main(["grid", "thm3.15", "--a", "2", "--xfrac", "0.999", "--format", "json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert len(data["results"]) == 1
    assert any("route (ii) skipped" in s["reason"] for s in data["skipped"])


def test_grid_disk_violations_are_skipped(capsys):
    assert cli.main(["grid", "thm3.14", "--a", "2", "--xfrac=-0.5,0.5", "--format", "json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert len(data["results"]) == 1 and len(data["skipped"]) == 1


def test_failure_exits_1(monkeypatch, capsys):
    monkeypatch.setattr(cli, "run_suites", lambda cfg: SuiteReport("x", [_rep("bad", 1.0)]))
    assert cli.main(["verify"]) == cli.EXIT_FAIL
    capsys.readouterr()


@pytest.mark.parametrize("exc", [ToleranceUnreachable, NonConvergence, TailBoundViolation])
def test_unreachable_tolerance_exits_3(monkeypatch, capsys, exc):
    def boom(*args, **kwargs):
        raise exc("cannot certify")
    monkeypatch.setattr(cli, "compute", boom)
    assert cli.main(["compute", "M", "--method", "thm1.a"]) == cli.EXIT_UNREACHABLE
    monkeypatch.setattr(cli, "run_grid", boom)
    assert cli.main(["grid", "eq8"]) == cli.EXIT_UNREACHABLE
    assert "tolerance unreachable" in capsys.readouterr().err


def test_module_entry_point():
    import subprocess
    import sys
    proc = subprocess.run([sys.executable, "-m", "harmzeta", "compute", "M", "--method", "thm1.a"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and "thm1.a" in proc.stdout
