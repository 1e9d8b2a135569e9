import csv
import io
import json
import subprocess
import sys

import numpy as np
import pytest

from entangle_net import cli, double_jc
from entangle_net.double_jc import PreparedState


def write(tmp_path, name, raw):
    p = tmp_path / name
    p.write_text(json.dumps(raw))
    return str(p)


def rows(path):
    with open(path) as fh:
        return list(csv.DictReader(fh))


def test_curve_double_jc(tmp_path):
    cfg = write(tmp_path, "c.json", {"model": "double_jc", "alpha_deg": 30, "tau_max": 3, "tau_steps": 31, "with_rho": True})
    out = tmp_path / "out.csv"
    assert cli.main(["curve", "--config", cfg, "--out", str(out)]) == 0
    data = rows(out)
    assert len(data) == 31 and "rho_14_re" in data[0]
    taus = np.array([float(r["tau"]) for r in data])
    expected = double_jc.concurrence_curve(PreparedState("phi", np.radians(30)), taus)
    assert np.allclose([float(r["concurrence"]) for r in data], expected, atol=1e-12)
    assert float(data[0]["concurrence"]) == pytest.approx(np.sqrt(3) / 2, abs=1e-12)


def test_curve_tavis_cross_and_multimode(tmp_path):
    cfg = write(tmp_path, "t.json", {"alpha_deg": 45, "pair": "cross", "tau_max": 5, "tau_steps": 11})
    out = tmp_path / "t.csv"
    assert cli.main(["curve", "--config", cfg, "--out", str(out)]) == 0
    assert float(rows(out)[0]["concurrence"]) == 0.0
    cfg = write(
        tmp_path, "m.json",
        {"model": "multimode_steady", "alpha_deg": 45, "tau_steps": 11, "bath": {"t_max": 20, "dt": 0.02}},
    )
    out = tmp_path / "m.csv"
    assert cli.main(["curve", "--config", cfg, "--out", str(out)]) == 0
    last = rows(out)[-1]
    assert float(last["tau"]) == pytest.approx(20.0)
    assert float(last["concurrence"]) == pytest.approx(0.125, abs=1e-6)


def test_multimode_sampling_must_divide(tmp_path):
    cfg = write(tmp_path, "m.json", {"model": "multimode_steady", "tau_steps": 7, "bath": {"t_max": 1, "dt": 0.1}})
    assert cli.main(["curve", "--config", cfg]) == 2


def test_sweep_summary(tmp_path):
    cfg = write(tmp_path, "s.json", {"alpha_start_deg": 35, "alpha_stop_deg": 40, "alpha_step_deg": 1, "tau_steps": 2001})
    out, summ = tmp_path / "s.csv", tmp_path / "s.json.out"
    assert cli.main(["sweep", "--config", cfg, "--out", str(out), "--summary", str(summ)]) == 0
    assert [float(r["alpha_deg"]) for r in rows(out)] == [35, 36, 37, 38, 39, 40]
    summary = json.loads(summ.read_text())
    assert 37.0 < summary["threshold_alpha_deg"] < 38.0
    assert summary["argmax_alpha_deg"] == 40.0


def test_sweep_rejects_other_models(tmp_path):
    cfg = write(tmp_path, "s.json", {"model": "double_jc"})
    assert cli.main(["sweep", "--config", cfg]) == 2


def test_sweep_deterministic_across_threads(tmp_path, monkeypatch):
    cfg = write(tmp_path, "s.json", {"alpha_grid_deg": [30, 50, 65.5, 80], "tau_steps": 801})
    outs = []
    for threads in ("1", "4"):
        monkeypatch.setenv("ENTANGLE_NET_THREADS", threads)
        out = tmp_path / f"s{threads}.csv"
        assert cli.main(["sweep", "--config", cfg, "--out", str(out)]) == 0
        outs.append(out.read_bytes())
    assert outs[0] == outs[1]


def test_steady_output(tmp_path):
    out = tmp_path / "st.json"
    assert cli.main(["steady", "--family", "phi", "--alpha-deg", "45", "--out", str(out)]) == 0
    data = json.loads(out.read_text())
    assert data["concurrence"] == pytest.approx(0.125)
    assert data["rho_cross"][0][3][0] == pytest.approx(-0.125)


def test_bad_inputs_exit_two(tmp_path, capsys):
    assert cli.main(["steady", "--family", "phi", "--alpha-deg", "120"]) == 2
    assert "alpha" in capsys.readouterr().err
    assert cli.main(["curve", "--config", str(tmp_path / "missing.json")]) == 2
    assert cli.main(["nonsense"]) == 2
    cfg = write(tmp_path, "bad.json", {"alpha_deg": -5})
    assert cli.main(["curve", "--config", cfg]) == 2


def test_validate_suite(tmp_path):
    report = tmp_path / "r.json"
    assert cli.main(["validate", "--suite", "voperators", "--report", str(report)]) == 0
    data = json.loads(report.read_text())
    assert data["passed"] and data["suites"]["voperators"]["max_defect"] < 1e-10


def test_console_entry_point(tmp_path):
    res = subprocess.run(
        [sys.executable, "-m", "entangle_net.cli", "steady", "--family", "psi", "--alpha-deg", "30"],
        capture_output=True, text=True, check=False,
    )
    assert res.returncode == 0
    assert json.load(io.StringIO(res.stdout))["concurrence"] == 0.0
