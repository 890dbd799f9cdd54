import csv
import io
import json
import subprocess
import sys

import numpy as np
import pytest

from parampli.cli import main


def run(args, capsys):
    code = main(args)
    out, err = capsys.readouterr()
    return code, out, err


def read_csv(text):
    lines = [ln for ln in text.splitlines() if not ln.startswith("#")]
    return list(csv.DictReader(io.StringIO("\n".join(lines))))


def test_spectrum_region_one(capsys):
    code, out, _ = run(["spectrum", "--delta", "0.5", "--kappa", "0", "--chi", "1"], capsys)
    assert code == 0
    (row,) = read_csv(out)
    assert row["regime"] == "RegionI"
    assert float(row["gamma"]) == pytest.approx(0.9155, abs=1e-4)


def test_spectrum_stable_json(capsys):
    code, out, _ = run(["spectrum", "--delta", "0.5", "--kappa", "0", "--chi", "0", "--format", "json"], capsys)
    assert code == 0
    data = json.loads(out)
    (row,) = data["rows"]
    assert row["regime"] == "Stable"
    assert all(row[f"omega{k}_im"] == 0 for k in range(1, 5))
    assert data["metadata"]["config"] == {"chi": 0.0, "delta": 0.5, "format": "json", "kappa": 0.0}


@pytest.mark.parametrize("args", [
    ["spectrum", "--kappa", "1.2"],
    ["spectrum", "--chi", "-1"],
    ["intensity", "--t-points", "1"],
    ["stability-map", "--kappas", "0,1.5"],
    ["spectrum", "--format", "xml"],
    ["entanglement", "--delta", "nan"],
])
def test_invalid_input_exit_code(args, capsys):
    code, out, err = run(args, capsys)
    assert code == 2
    assert out == ""
    assert err


def test_classify(capsys):
    code, out, _ = run(["classify", "--delta", "-1", "--kappa", "0", "--chi", "1"], capsys)
    (row,) = read_csv(out)
    assert (row["regime"], row["regime_spectral"]) == ("RegionII", "RegionII")
    assert float(row["omega_rot"]) == pytest.approx(1.2720, abs=1e-4)
    code, out, _ = run(["classify", "--delta", "0", "--chi", "1"], capsys)
    (row,) = read_csv(out)
    assert row["regime"] == "NearThreshold" and row["chi2_threshold"] == ""


def test_stability_map(capsys, tmp_path):
    svg = tmp_path / "map.svg"
    code, out, _ = run(["stability-map", "--svg", str(svg)], capsys)
    assert code == 0
    rows = read_csv(out)
    assert list(rows[0]) == ["kappa", "delta", "chi2_analytic", "chi2_bisect", "regime_at_probe"]
    by_kappa = {}
    for r in rows:
        by_kappa.setdefault(float(r["kappa"]), []).append(
            (float(r["delta"]), float(r["chi2_analytic"]), float(r["chi2_bisect"]), r["regime_at_probe"]))
    assert sorted(by_kappa) == [0.0, 0.4, 0.8]
    k0 = dict((d, a) for d, a, _, _ in by_kappa[0.0])
    assert k0[1.0] == 0.25
    d, a, _, _ = min(by_kappa[0.8], key=lambda x: x[1])
    assert d == pytest.approx(-0.6, abs=1e-12) and a == pytest.approx(0.0, abs=1e-15)
    for pts in by_kappa.values():
        assert len(pts) == 200
        for d, a, b, regime in pts:
            assert abs(a - b) <= 1e-6
            assert regime == ("RegionI" if d > 0 else "RegionII")
    k4 = dict((d, a) for d, a, _, _ in by_kappa[0.4])
    # kappa=0.4 lies above kappa=0 except between the two Region-II lobe centres
    for d in k0:
        if d > 0 or d <= -1.0:
            assert k4[d] >= k0[d]
    assert svg.read_text().startswith("<svg")


def test_intensity(capsys):
    code, out, _ = run(["intensity", "--delta", "0.5", "--chi", "1", "--t-points", "301"], capsys)
    rows = read_csv(out)
    assert len(rows) == 301
    assert float(rows[0]["i_light"]) == pytest.approx(4.0, abs=1e-12)
    assert float(rows[0]["t"]) == 0.0
    t = np.array([float(r["t"]) for r in rows])
    lg = np.array([float(r["log10_i_light"]) for r in rows])
    late = t >= 10
    slope = np.polyfit(t[late], lg[late], 1)[0]
    assert slope == pytest.approx(2 * 0.9154711840576705 / np.log(10), rel=1e-3)


def test_entanglement(capsys):
    code, out, _ = run(["entanglement", "--delta", "0.5", "--chi", "1", "--kappa", "0"], capsys)
    rows = read_csv(out)
    assert len(rows) == 1500
    assert float(rows[-1]["y"]) > 0.999
    assert all(0 <= float(r["y"]) < 1 for r in rows)
    code, out, _ = run(["entanglement", "--delta", "-1", "--chi", "1"], capsys)
    y = [float(r["y"]) for r in read_csv(out) if float(r["t"]) >= 10]
    assert np.mean(y) < 0.9


def test_csv_dialect(capsys):
    _, out, _ = run(["intensity", "--t-points", "3", "--t-max", "0.1"], capsys)
    assert "\r" not in out
    data = [ln for ln in out.splitlines() if not ln.startswith("#")]
    assert data[0] == "t,i_atom,i_light,log10_i_light"
    value = data[2].split(",")[0]
    assert float(value) == 0.05 and value == format(0.05, ".17g")


def test_config_precedence_and_replay(capsys, tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"delta": -1.0, "kappa": 0.4, "t-max": 5.0, "t_points": 11}))
    _, out, _ = run(["entanglement", "--config", str(cfg), "--kappa", "0.8"], capsys)
    meta = json.loads(out.splitlines()[1][len("# config: "):])
    assert meta == {"chi": 1.0, "delta": -1.0, "format": "csv", "kappa": 0.8, "t_max": 5.0, "t_points": 11}

    first = tmp_path / "first.csv"
    run(["entanglement", "--config", str(cfg), "--kappa", "0.8", "--out", str(first)], capsys)
    assert first.read_text() == out
    _, replay, _ = run(["entanglement", "--config", str(first)], capsys)
    assert replay == out

    js = tmp_path / "first.json"
    run(["entanglement", "--config", str(cfg), "--format", "json", "--out", str(js)], capsys)
    _, replay, _ = run(["entanglement", "--config", str(js)], capsys)
    assert replay == js.read_text()


def test_unknown_config_key(capsys, tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"delta": 0.5, "gamma": 3}))
    code, _, err = run(["spectrum", "--config", str(cfg)], capsys)
    assert code == 2 and "gamma" in err


def test_threads_do_not_change_output(capsys, monkeypatch):
    args = ["intensity", "--delta", "-1", "--kappa", "0.4", "--t-points", "200"]
    _, one, _ = run(args + ["--threads", "1"], capsys)
    _, four, _ = run(args + ["--threads", "4"], capsys)
    monkeypatch.setenv("PARAMPLI_THREADS", "3")
    _, env, _ = run(args, capsys)
    assert one == four == env
    monkeypatch.setenv("PARAMPLI_THREADS", "zero")
    code, _, _ = run(args, capsys)
    assert code == 2


def test_validate_deterministic_and_forced_failure(capsys, tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    assert main(["validate", "--seed", "7", "--samples", "20", "--out", str(a)]) == 0
    assert main(["validate", "--seed", "7", "--samples", "20", "--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()
    rows = read_csv(a.read_text())
    assert all(r["status"] == "PASS" for r in rows)
    capsys.readouterr()
    code, out, err = run(["validate", "--seed", "7", "--samples", "5", "--tol", "1e-30"], capsys)
    assert code == 1
    assert "FAIL" in out and "validation failed" in err


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "parampli", "spectrum", "--format", "json"],
                          capture_output=True, text=True, check=True)
    assert json.loads(proc.stdout)["rows"][0]["regime"] == "RegionI"
