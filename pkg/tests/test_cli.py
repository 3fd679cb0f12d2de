import json

import numpy as np
import pytest

from tulczyjew import cli
from tulczyjew.cli import ConfigError, VerifyConfig, emit_report, main, run_verify
from tulczyjew.suites import Check, checks_for


def small(**kw):
    d = {"scenarios": ["monopole"], "samples_per_property": 2, "suites": ["algebra", "bundle"]}
    d.update(kw)
    return VerifyConfig.from_dict(d)


def test_config_defaults_and_validation():
    cfg = VerifyConfig()
    assert cfg.samples_per_property == 100 and cfg.seed == 0
    assert set(cfg.suites) == {"algebra", "bundle", "trivialize", "triplet", "reduce", "audit"}
    with pytest.raises(ConfigError):
        VerifyConfig(scenarios=["moon"])
    with pytest.raises(ConfigError):
        VerifyConfig(samples_per_property=0)
    with pytest.raises(ConfigError):
        VerifyConfig(suites=["everything"])
    with pytest.raises(ConfigError):
        VerifyConfig(tolerances={"exact": 1.0})
    with pytest.raises(ConfigError):
        VerifyConfig.from_dict({"colour": "red"})


def test_reports_are_byte_identical(tmp_path):
    p1, p2 = tmp_path / "a.json", tmp_path / "b.json"
    emit_report(run_verify(small(seed=7)), p1)
    emit_report(run_verify(small(seed=7)), p2)
    assert p1.read_bytes() == p2.read_bytes()


def test_emit_report_file(tmp_path):
    p1, p2 = tmp_path / "a.json", tmp_path / "b.json"
    assert main(["verify", "--scenario", "flat", "--suite", "algebra", "--samples", "2",
                 "--seed", "3", "--report", str(p1)]) == 0
    assert main(["verify", "--scenario", "flat", "--suite", "algebra", "--samples", "2",
                 "--seed", "3", "--report", str(p2)]) == 0
    assert p1.read_bytes() == p2.read_bytes()
    d = json.loads(p1.read_text())
    assert d["schema_version"] == 1 and d["status"] == "pass"
    keys = [(r["suite"], r["invariant"], r["scenario"]) for r in d["records"]]
    assert keys == sorted(keys)


def test_empty_suites_pass():
    rep = run_verify(small(suites=[]))
    assert rep.records == [] and rep.status == "pass"
    assert rep.to_dict()["summary"] == {"pass": 0, "fail": 0, "discrepancy": 0}


def test_failing_synthetic_invariant(monkeypatch):
    bad = Check("algebra", "injected", lambda s, rng, n: (1.0, n, {}), "exact", None, False)
    rep = run_verify(small(), checks=[bad])
    assert rep.status == "fail"
    r = rep.records[0]
    assert r.status == "fail" and r.max_residual > r.tolerance
    monkeypatch.setattr(cli.U, "checks_for", lambda suites: [bad])
    assert main(["verify", "--scenario", "flat", "--samples", "1", "--report", "/dev/null"]) == 1


def test_nan_residual_fails():
    bad = Check("algebra", "nan", lambda s, rng, n: (float("nan"), n, {}), "exact", None, False)
    assert run_verify(small(), checks=[bad]).status == "fail"


def test_audit_records_discrepancy_not_fail():
    cfg = VerifyConfig(scenarios=["so3-generic"], samples_per_property=3, suites=["audit"])
    rep = run_verify(cfg)
    (r,) = rep.records
    assert r.status == "discrepancy" and rep.status == "pass"
    assert "corrected" in r.notes["matching_readings"]
    assert "foot" not in r.notes["matching_readings"]
    assert "bracket" in r.notes["discrepant_term_groups"]
    cfg = VerifyConfig(scenarios=["monopole"], samples_per_property=3, suites=["audit"])
    (r,) = run_verify(cfg).records
    assert r.status == "pass" and r.notes["discrepant_term_groups"] == []


def test_flat_scenario_all_pass():
    rep = run_verify(VerifyConfig(scenarios=["flat"], samples_per_property=3))
    assert rep.status == "pass"
    assert all(r.status == "pass" for r in rep.records)


def test_per_invariant_tolerance_override():
    cfg = small(tolerances={"invariants": {"algebra/jacobi": 1e-3}})
    rec = [r for r in run_verify(cfg).records if r.invariant == "jacobi"][0]
    assert rec.tolerance == 1e-3


def test_cell_rng_independent_of_order():
    a = cli.cell_rng(5, "triplet", "x", "flat").random(3)
    cli.cell_rng(5, "triplet", "y", "flat").random(10)
    assert np.array_equal(a, cli.cell_rng(5, "triplet", "x", "flat").random(3))
    assert not np.array_equal(a, cli.cell_rng(6, "triplet", "x", "flat").random(3))


def test_usage_errors(tmp_path, capsys):
    assert main(["verify", "--scenario", "moon"]) == 2
    assert main(["frobnicate"]) == 2
    assert main(["verify", "--config", str(tmp_path / "missing.json")]) == 2
    p = tmp_path / "bad.json"
    p.write_text("[1, 2]")
    assert main(["verify", "--config", str(p)]) == 2
    assert main(["sample", "kappa_hat", "--scenario", "moon"]) == 2
    assert main(["sample", "no_such_map"]) == 2
    assert main(["report", str(tmp_path / "missing.json")]) == 2


def test_env_seed_override(tmp_path, monkeypatch):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"scenarios": ["flat"], "suites": ["algebra"],
                               "samples_per_property": 2, "seed": 1}))
    monkeypatch.setenv("TULCZYJEW_SEED", "42")
    out = tmp_path / "r.json"
    assert main(["verify", "--config", str(cfg), "--seed", "9", "--report", str(out)]) == 0
    assert json.loads(out.read_text())["config"]["seed"] == 42
    monkeypatch.setenv("TULCZYJEW_SEED", "forty-two")
    assert main(["verify", "--config", str(cfg)]) == 2


def test_sample_subcommand(capsys):
    assert main(["sample", "kappa_hat", "-n", "2", "--seed", "1"]) == 0
    rows = json.loads(capsys.readouterr().out)
    assert len(rows) == 2 and set(rows[0]) == {"inputs", "output"}
    assert main(["sample", "lambda:TT*Q", "--scenario", "so3-generic", "-n", "1"]) == 0
    capsys.readouterr()
    for name in cli.SAMPLE_MAPS:
        assert main(["sample", name, "-n", "1"]) == 0
    capsys.readouterr()


def test_report_subcommand(tmp_path, capsys):
    out = tmp_path / "r.json"
    assert main(["verify", "--scenario", "so3-generic", "--suite", "audit", "--samples", "2",
                 "--report", str(out)]) == 0
    capsys.readouterr()
    assert main(["report", str(out)]) == 0
    text = capsys.readouterr().out
    assert "discrepancy" in text and "discrepant_term_groups" in text


def test_every_registered_check_runs_somewhere():
    names = {(c.suite, c.name) for c in checks_for()}
    assert ("triplet", "Omega_matches_ambient_canonical_form") in names
    assert len(names) == len(checks_for())
