from __future__ import annotations

import json
import subprocess
import sys

import pytest

from affinetube.cli import ConfigError, main, parse_n_range, resolve_jobs


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_analyze_lorentzian_family(capsys):
    code, out, _ = run(capsys, "analyze", "--family", "t2.4", "--n", "4")
    rep = json.loads(out)
    assert code == 0
    assert rep["schema_version"] == 1
    res = rep["result"]
    assert res["signature"] == [3, 1]
    assert res["tube"] is True
    assert res["l1_norm_sq"] == "0"
    assert res["orbit"] == "NullTimesQuadric" and res["alphas"] == ["1", "1"]
    assert res["symmetry_dim"] == 6 and res["isotropy_dim"] == 2
    assert res["filtration_dims"][-1] == 2


def test_analyze_quadric(capsys):
    code, out, _ = run(capsys, "analyze", "--family", "t1", "--n", "4")
    res = json.loads(out)["result"]
    assert code == 0
    assert res["signature"] == [4, 0]
    assert res["l1_zero"] is True and res["tube"] == "n/a"


def test_analyze_t2_3_alpha(capsys):
    code, out, _ = run(capsys, "analyze", "--family", "t2.3", "--n", "4", "--alpha", "1/7")
    assert code == 0
    rep = json.loads(out)
    assert rep["config"]["alpha"] == "1/7"
    assert rep["result"]["orbit"] == "SquareNullLinear"


def test_analyze_surface_file(tmp_path, capsys):
    f = tmp_path / "para.json"
    f.write_text(json.dumps({"n": 2, "F": "x3 - x1^2 - x2^2", "constraint": None, "point": ["0", "0", "0"]}))
    code, out, _ = run(capsys, "analyze", "--surface", str(f))
    res = json.loads(out)["result"]
    assert code == 0 and res["symmetry_dim"] == 4 and res["signature"] == [2, 0]


@pytest.mark.parametrize(
    "payload,needle",
    [
        ({"n": 2, "F": "0"}, "zero"),
        ({"n": 2, "F": "x3 - x1^^2"}, "line 1"),
        ({"n": 2, "F": "x3 - 1"}, "not on the surface"),
        ({"n": 2, "F": "x3*x3 - x1*x1 - x2*x2"}, "gradient"),
        ({"n": 12, "F": "x1"}, "n must be"),
        ({"F": "x1"}, "expected an object"),
    ],
)
def test_analyze_bad_surface_files(tmp_path, capsys, payload, needle):
    f = tmp_path / "bad.json"
    f.write_text(json.dumps(payload))
    code, _, err = run(capsys, "analyze", "--surface", str(f))
    assert code == 2
    assert needle in err


def test_analyze_unreadable_json(tmp_path, capsys):
    f = tmp_path / "bad.json"
    f.write_text("{not json")
    code, _, err = run(capsys, "analyze", "--surface", str(f))
    assert code == 2 and "invalid JSON" in err


def test_verify_theorem1_passes_and_is_deterministic(capsys):
    code1, out1, _ = run(capsys, "verify", "theorem1", "--n", "2..3")
    code2, out2, _ = run(capsys, "verify", "theorem1", "--n", "2..3")
    assert code1 == code2 == 0
    assert out1 == out2
    rep = json.loads(out1)
    assert rep["summary"]["fail"] == 0
    assert all("seconds" not in c for c in rep["checks"])


def test_timings_are_opt_in(capsys):
    _, out, _ = run(capsys, "verify", "theorem1", "--n", "2", "--timings")
    assert all("seconds" in c for c in json.loads(out)["checks"])


def test_verify_section6_reports_failure_exit(capsys):
    code, out, _ = run(capsys, "verify", "section6", "--n", "4")
    rep = json.loads(out)
    block = rep["section6"][0]
    assert block["tangent_fields_ok"] == 16
    assert block["isotropy_dim"] == block["expected_isotropy_dim"] == 7
    assert block["closure_ok"] and block["sl2_ok"]
    assert block["cm"]["F11_ok"] and block["cm"]["traces_ok"]
    # the printed F33 disagrees with the expansion, so the suite fails
    assert block["cm"]["F33_ok"] is False
    assert code == 1


def test_text_format(capsys):
    code, out, _ = run(capsys, "verify", "theorem1", "--n", "2", "--format", "text")
    assert code == 0
    assert out.splitlines()[-1].startswith("summary:")
    assert "PASS" in out


@pytest.mark.parametrize(
    "argv",
    [
        ["verify", "theorem2", "--n", "3"],
        ["verify", "theorem1", "--n", "9"],
        ["verify", "theorem1", "--n", "5..4"],
        ["verify", "theorem1", "--n", "x"],
        ["verify", "theorem1", "--cap", "9"],
        ["verify", "theorem1", "--jobs", "0"],
        ["analyze", "--family", "t2.1", "--n", "3"],
        ["analyze", "--family", "t2.9", "--n", "4"],
        ["analyze", "--family", "t2.1"],
        ["analyze", "--family", "t2.1", "--n", "4", "--alpha", "1"],
        ["verify", "theorem7"],
        [],
    ],
)
def test_config_errors_exit_2(capsys, argv):
    assert main(argv) == 2


def test_afh_jobs_env_overrides_flag(monkeypatch, capsys):
    assert resolve_jobs(3, {}) == 3
    assert resolve_jobs(None, {}) == 1
    assert resolve_jobs(1, {"AFH_JOBS": "4"}) == 4
    with pytest.raises(ConfigError):
        resolve_jobs(1, {"AFH_JOBS": "many"})
    _, serial, _ = run(capsys, "verify", "theorem2", "--n", "4", "--jobs", "1")
    monkeypatch.setenv("AFH_JOBS", "3")
    code, parallel, _ = run(capsys, "verify", "theorem2", "--n", "4", "--jobs", "1")
    assert code == 0
    assert parallel == serial


def test_parse_n_range():
    assert parse_n_range("4..6") == [4, 5, 6]
    assert parse_n_range("4,6") == [4, 6]
    assert parse_n_range("5") == [5]


def test_catalog_list(capsys):
    code, out, _ = run(capsys, "catalog", "list", "--n", "4")
    assert code == 0
    names = [line.split()[0] for line in out.splitlines()[1:]]
    assert names == ["t1", "t2.1", "t2.2", "t2.3", "t2.4", "t2.5", "t2.6", "t2.7", "sec6"]
    code, out, _ = run(capsys, "catalog", "list", "--format", "json")
    assert len(json.loads(out)["catalog"]) == 9


def test_report_round_trip(tmp_path, capsys):
    path = tmp_path / "r.json"
    assert main(["verify", "theorem1", "--n", "2", "--out", str(path)]) == 0
    saved = json.loads(path.read_text())
    code, out, _ = run(capsys, "report", "--input", str(path), "--format", "text")
    assert code == 0
    assert f"summary: {saved['summary']['pass']} pass, 0 fail" in out


def test_report_rejects_foreign_schema(tmp_path, capsys):
    path = tmp_path / "r.json"
    path.write_text(json.dumps({"schema_version": 99}))
    assert main(["report", "--input", str(path)]) == 2


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "affinetube.cli", "--version"], capture_output=True, text=True)
    assert out.returncode == 0 and "afh" in out.stdout
