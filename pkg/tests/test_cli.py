"""End-to-end CLI runs through main(argv), exit codes and emitted tables."""
from __future__ import annotations

import json
import os

import numpy as np
import pytest

from vortexflow.cli import main
from vortexflow.verify import report_from_json

# mpmath, 50 digits: 4/sinh(4) (sausage curvature at s = 0, t = -1)
R_SAUSAGE_CENTER = 0.14657428130346245


def test_classify_catalog_family(capsys):
    assert main(["classify", "--family", "sausage"]) == 0
    out = capsys.readouterr().out
    assert "family: E" in out
    assert "lifespan: ancient" in out
    assert "end s->-inf: smooth-end" in out


def test_classify_explicit_params(capsys):
    code = main(["classify", "--eps", "1", "--tau0", "0.0", "--rho", "4.0", "--t0", "0.0"])
    assert code == 0
    assert "family: J" in capsys.readouterr().out


def test_classify_inconsistent_params_is_usage_error(capsys):
    code = main(["classify", "--eps", "1", "--tau0", "4.0", "--sigma0", "12.0", "--rho", "3.0"])
    assert code == 2
    assert "error" in capsys.readouterr().err


def test_classify_without_params_is_usage_error():
    assert main(["classify"]) == 2


def test_unknown_family_is_usage_error():
    assert main(["sample", "--family", "Z-nonsense"]) == 2


def test_sample_table(tmp_path, capsys):
    code = main(
        [
            "--out",
            str(tmp_path),
            "sample",
            "--family",
            "sausage",
            "--t",
            "-1.0",
            "--s-min",
            "-2.0",
            "--s-max",
            "2.0",
            "--ds",
            "0.01",
        ]
    )
    assert code == 0
    path = tmp_path / "sample-E.csv"
    assert f"wrote {path}" in capsys.readouterr().out
    lines = path.read_text().strip().split("\n")
    assert lines[0] == "s,u,w,R_closed,R_fd,F_closed,F_fd,mu"
    assert len(lines) == 402  # 401 nodes plus header
    center = lines[1 + 200].split(",")
    assert float(center[0]) == pytest.approx(0.0, abs=1e-12)
    np.testing.assert_allclose(float(center[3]), R_SAUSAGE_CENTER, rtol=1e-13)


def test_sample_json_and_gnuplot(tmp_path):
    argv = [
        "--out",
        str(tmp_path),
        "--format",
        "json",
        "sample",
        "--family",
        "cigar",
        "--ds",
        "0.1",
    ]
    assert main(argv) == 0
    rows = json.loads((tmp_path / "sample-B-cigar.json").read_text())
    assert len(rows) == 50
    assert set(rows[0]) == {"s", "u", "w", "R_closed", "R_fd", "F_closed", "F_fd", "mu"}

    argv = ["--out", str(tmp_path), "--emit-gnuplot", "sample", "--family", "cigar", "--ds", "0.1"]
    assert main(argv) == 0
    script = (tmp_path / "sample-B-cigar.gp").read_text()
    assert 'plot "sample-B-cigar.csv"' in script


def test_flow_table(tmp_path):
    code = main(
        [
            "--out",
            str(tmp_path),
            "flow",
            "--family",
            "sausage",
            "--t0",
            "-1.0",
            "--t1",
            "-0.98",
            "--ds",
            "1e-2",
            "--dt",
            "1e-5",
            "--snapshots",
            "3",
        ]
    )
    assert code == 0
    lines = (tmp_path / "flow-E.csv").read_text().strip().split("\n")
    assert lines[0] == "t,tau,sigma,max_vortex_residual,sup_error_vs_closed"
    assert len(lines) == 4
    final = [float(v) for v in lines[-1].split(",")]
    assert final[0] == pytest.approx(-0.98, rel=1e-12)
    assert final[4] < 1e-4


def test_flow_bad_time_order_is_usage_error():
    assert main(["flow", "--family", "sausage", "--t0", "-0.9", "--t1", "-1.0"]) == 2


def test_flow_unstable_pairing_is_runtime_error(capsys):
    code = main(
        ["flow", "--family", "sausage", "--t0", "-1.0", "--t1", "-0.98", "--ds", "1e-2", "--dt", "1e-3"]
    )
    assert code == 3
    assert "error" in capsys.readouterr().err


def test_verify_single_suite(capsys):
    assert main(["verify", "--suite", "E"]) == 0
    out = capsys.readouterr().out
    assert "20/20 checks passed" in out
    assert "PASS E vortex-fd" in out


def test_verify_coarse_grid_needs_scale_tol(capsys):
    assert main(["verify", "--suite", "E", "--ds", "0.1"]) == 1
    capsys.readouterr()
    assert main(["--scale-tol", "verify", "--suite", "E", "--ds", "0.1"]) == 0


def test_verify_report_and_compare(tmp_path, capsys):
    code = main(["--out", str(tmp_path), "verify", "--suite", "E", "--report", "base.json"])
    assert code == 0
    report_path = tmp_path / "base.json"
    report = report_from_json(report_path.read_text())
    assert report.summary["failed"] == 0
    capsys.readouterr()

    # rerun against the fresh report: no regressions
    code = main(["verify", "--suite", "E", "--compare", str(report_path)])
    assert code == 0
    capsys.readouterr()

    # shrink one stored residual so the rerun looks like a regression
    payload = json.loads(report_path.read_text())
    for row in payload["results"]:
        if row["check_id"] == "vortex-fd":
            row["residual"] = row["residual"] / 3.0
    tampered = tmp_path / "tampered.json"
    tampered.write_text(json.dumps(payload))
    code = main(["verify", "--suite", "E", "--compare", str(tampered)])
    assert code == 1
    assert "REGRESSION E vortex-fd" in capsys.readouterr().out


def test_limits_undocumented_is_runtime_error(capsys):
    code = main(["limits", "--family", "torus", "--direction", "lower"])
    assert code == 3
    assert "error" in capsys.readouterr().err


def test_limits_table(tmp_path):
    assert main(["--out", str(tmp_path), "limits", "--family", "sausage", "--direction", "upper"]) == 0
    lines = (tmp_path / "limits-E-upper.csv").read_text().strip().split("\n")
    assert lines[0] == "t,distance"
    assert len(lines) == 4
    dists = [float(line.split(",")[1]) for line in lines[1:]]
    assert dists[0] > dists[1] > dists[2]  # approach to the documented limit
