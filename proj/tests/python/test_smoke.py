import json
import math
import os
import subprocess

import numpy as np
import pytest

import bhlab


def test_closed_form_core_circle():
    p = bhlab.closed_form(2.0, 0.7, 0.0)
    assert np.allclose(p, [math.cos(0.7), math.sin(0.7), 0.0], atol=1e-12)


def test_numeric_matches_closed():
    for a in (2.0, 5.0):
        assert np.linalg.norm(bhlab.numeric_position(a, 1.0, 0.3) - bhlab.closed_form(a, 1.0, 0.3)) < 1e-10


def test_conformal_factor_value():
    assert abs(bhlab.conformal_factor(2.0, 0.0, 0.5) - math.cosh(0.5) * math.cosh(1.0)) < 1e-12


def test_degree_and_curvature():
    assert [bhlab.gauss_map_degree(n) for n in range(4)] == [1, 2, 3, 4]
    tc = bhlab.total_curvature(1, 200)
    assert abs(tc["numeric"] + 8 * math.pi) < 0.02 * 8 * math.pi


def test_ruled_deviation_below_strip():
    value, _, _ = bhlab.ruled_deviation_sup(10.0)
    assert value <= bhlab.strip_halfwidth(10.0)


def test_mesh_shapes():
    v, q = bhlab.mesh(10.0, -0.1, 0.1, -0.2, 0.2, 5, 4)
    assert v.shape == (20, 3)
    assert q.shape == (12, 4)


def test_run_config_empty_and_errors():
    rep = bhlab.run_config(json.dumps({"experiments": []}))
    assert rep["summary"]["total"] == 0
    with pytest.raises(bhlab.UsageError, match=r"experiments\[0\]\.name"):
        bhlab.run_config(json.dumps({"experiments": [{"name": "nope"}]}))


def test_symmetries_experiment():
    rep = bhlab.run_config(json.dumps({"experiments": [{"name": "prop1-symmetries", "spins": [4.0]}]}))
    assert rep["summary"]["verdict"] == "PASS"


def test_embedded_small_sample():
    r = bhlab.embeddedness_verdict(30, 2.0, 40)
    assert r["verdict"] == "EMBEDDED"


def test_pipeline_report():
    rep = bhlab.pipeline()
    assert rep["summary"]["verdict"] == "PASS"


def test_configs_match_schema():
    jsonschema = pytest.importorskip("jsonschema")
    root = os.environ.get("BHLAB_DATA", os.path.join(os.path.dirname(__file__), "..", "..", "data"))
    schema_path = os.path.join(root, "..", "schema", "config.schema.json")
    with open(schema_path) as f:
        schema = json.load(f)
    cfg_dir = os.path.join(root, "configs")
    for name in sorted(os.listdir(cfg_dir)):
        with open(os.path.join(cfg_dir, name)) as f:
            jsonschema.validate(json.load(f), schema)


def test_cli_exit_codes(tmp_path):
    cli = os.environ.get("BHLAB_CLI")
    if not cli:
        pytest.skip("BHLAB_CLI not set")
    ok = subprocess.run([cli, "verify", "--experiment", "asymptotic-rays", "--out", str(tmp_path / "r.json")],
                        capture_output=True)
    assert ok.returncode == 0
    report = json.loads((tmp_path / "r.json").read_text())
    assert set(report) == {"version", "config", "checks", "summary"}
    bad = subprocess.run([cli, "generate", "--a", "3", "--out", str(tmp_path / "x.txt")], capture_output=True)
    assert bad.returncode == 2
