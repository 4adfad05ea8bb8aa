"""CLI contract: JSON round-trip, determinism, exit codes, suite reports."""

import json

import pytest

from bergspec.cli import main

STRIP_CFG = "p = 2\nmodel = strip_flow\n"
STRIP_WEIGHTED_CFG = "p = 2\nmodel = strip_flow\nc = 0.4\ns = 0.7\n"
TRIDENT_CFG = "p = 2\nmodel = trident\nd = 0.5\n"
PARAM_CFG = ("p = 2\nmodel = parametric\n"
             "fp = (1, 1.0, 0.0, dw)\nfp = (-1, -1.0, 0.0, rep)\n")


@pytest.fixture
def strip_cfg(tmp_path):
    p = tmp_path / "strip.cfg"
    p.write_text(STRIP_CFG)
    return p


def test_classify_json_round_trip(tmp_path, strip_cfg):
    out = tmp_path / "out.json"
    code = main(["classify", "-c", str(strip_cfg), "--t", "1.0",
                 "--json", str(out)])
    assert code == 0
    report = json.loads(out.read_text())
    assert report["gamma_profile"]["gamma0"] == 1.0
    assert report["gamma_profile"]["gammas"] == [-1.0, "-inf"]
    spec = report["regions"]["generator_spectrum"]
    assert spec == [{"kind": "vstrip", "params": [-1.0, 1.0],
                     "certainty": "certified"}]
    ess = report["regions"]["essential_spectrum"]
    assert sorted(c["params"][0] for c in ess) == [-1.0, 1.0]
    op = report["operator"][0]
    assert abs(op["radius"] - 2.718281828459) < 1e-9
    # serialization round-trips to an equal value
    assert json.loads(json.dumps(report)) == report


def test_classify_byte_determinism(tmp_path, strip_cfg):
    outs = []
    for name in ("a.json", "b.json"):
        out = tmp_path / name
        svg = tmp_path / (name + ".svg")
        assert main(["classify", "-c", str(strip_cfg),
                     "--json", str(out), "--svg", str(svg)]) == 0
        outs.append((out.read_bytes(), svg.read_bytes()))
    assert outs[0] == outs[1]


def test_verify_pass_and_tolerance_flags(tmp_path, strip_cfg):
    out = tmp_path / "v.json"
    code = main(["verify", "-c", str(strip_cfg), "--lambda", "0.5+0i",
                 "--t", "1.0", "--json", str(out)])
    assert code == 0
    report = json.loads(out.read_text())
    checks = {c["check"]: c for c in report["results"][0]["checks"]}
    assert checks["eigenfunction_membership"]["status"] == "pass"
    assert checks["eigenfunction_membership"]["verdict"] == "convergent"
    assert checks["eigen_identity_t_1"]["status"] == "pass"
    # an absurdly tight identity tolerance forces a verification failure
    code = main(["verify", "-c", str(strip_cfg), "--lambda", "0.5+0i",
                 "--tol-identity", "1e-30", "--json", str(tmp_path / "f.json")])
    assert code == 1


def test_verify_resolvent_block(tmp_path, strip_cfg):
    out = tmp_path / "v.json"
    assert main(["verify", "-c", str(strip_cfg), "--lambda", "2+0i",
                 "--json", str(out)]) == 0
    report = json.loads(out.read_text())
    checks = {c["check"]: c for c in report["results"][0]["checks"]}
    res = checks["resolvent_residual"]
    assert res["status"] == "pass"
    assert abs(res["K"]["re"] - 0.5) < 1e-9 and abs(res["K"]["im"]) < 1e-9


def test_truncate_report(tmp_path, strip_cfg):
    out = tmp_path / "t.json"
    code = main(["truncate", "-c", str(strip_cfg), "--t", "1.0",
                 "--N", "40", "--nmax", "10", "--json", str(out)])
    assert code == 0
    report = json.loads(out.read_text())
    assert report["radius_bound_ok"] is True
    assert len(report["gelfand_sequence"]) == 10
    assert report["gelfand_radius"] <= 1.05 * report["operator_radius_theory"]


def test_exit_code_config_error(tmp_path, capsys):
    bad = tmp_path / "bad.cfg"
    bad.write_text("p = 0.5\nmodel = strip_flow\n")
    assert main(["classify", "-c", str(bad)]) == 2
    missing = tmp_path / "nope.cfg"
    assert main(["classify", "-c", str(missing)]) == 2


def test_exit_code_coverage_error(tmp_path, capsys):
    cfg = tmp_path / "cov.cfg"
    cfg.write_text("p = 2\nmodel = parametric\n"
                   "fp = (1, 1.0, -inf, dw)\nfp = (-1, -1.0, 0.0, rep)\n")
    out = tmp_path / "cov.json"
    assert main(["classify", "-c", str(cfg), "--json", str(out)]) == 3
    report = json.loads(out.read_text())
    assert "generator_spectrum" in report["coverage_errors"]


def test_wall_time_on_stderr_not_stdout(tmp_path, strip_cfg, capsys):
    main(["classify", "-c", str(strip_cfg), "--json", "-"])
    captured = capsys.readouterr()
    assert "wall time" in captured.err
    assert "wall time" not in captured.out
    json.loads(captured.out)


def test_plot_subcommand(tmp_path, strip_cfg):
    svg = tmp_path / "r.svg"
    assert main(["plot", "-c", str(strip_cfg), "--what", "essential",
                 "--svg", str(svg)]) == 0
    assert svg.read_text().startswith('<?xml')


def test_report_suite(tmp_path):
    (tmp_path / "strip.cfg").write_text(STRIP_WEIGHTED_CFG)
    (tmp_path / "param.cfg").write_text(PARAM_CFG)
    suite = tmp_path / "suite.txt"
    suite.write_text("# comment line\nstrip.cfg\nparam.cfg\n")
    out = tmp_path / "rpt"
    assert main(["report", "--suite", str(suite), "--out", str(out),
                 "--N", "16", "--nmax", "8"]) == 0
    for name in ("strip.classify.json", "strip.svg", "strip.truncate.json",
                 "param.classify.json", "param.svg", "param.truncate.json"):
        assert (out / name).exists()
    trunc = json.loads((out / "param.truncate.json").read_text())
    assert "error" in trunc  # parametric scenarios cannot be truncated
