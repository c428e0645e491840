import csv
import json
import math
import subprocess
import sys
from pathlib import Path

import pytest

from crwscatter.cli import main
from crwscatter.figures import FIGURES, run_figure
from crwscatter.scattering import COLUMNS

CONFIGS = Path(__file__).resolve().parents[1] / "configs"


def read_csv(path):
    with open(path) as fh:
        lines = [line for line in fh if not line.startswith("#")]
    return list(csv.DictReader(lines))


def test_sweep_stdout(capsys):
    assert main(["sweep", str(CONFIGS / "fig2a.ini"), "--points", "5"]) == 0
    out = capsys.readouterr().out
    lines = out.splitlines()
    assert lines[0] == ",".join(COLUMNS)
    assert len(lines) == 6
    assert "\r" not in out
    mid = dict(zip(COLUMNS, lines[3].split(",")))
    assert mid["T"] == "0" and mid["R"] == "1" and mid["Re_V"] == "inf"


def test_sweep_json(tmp_path):
    out = tmp_path / "s.json"
    assert main(["sweep", str(CONFIGS / "fig2a.ini"), "--points", "11", "--format", "json", "--out", str(out)]) == 0
    rows = json.loads(out.read_text())
    assert len(rows) == 11 and list(rows[0]) == list(COLUMNS)
    assert rows[5]["Re_V"] is None


def test_precision_override(capsys, monkeypatch):
    monkeypatch.setenv("CRWSCATTER_PRECISION", "6")
    main(["sweep", str(CONFIGS / "fig2a.ini"), "--points", "3"])
    row = capsys.readouterr().out.splitlines()[1]
    assert row.startswith("0,2,-0.00125,")


def test_seed_is_accepted(capsys):
    assert main(["sweep", str(CONFIGS / "fig2a.ini"), "--points", "3", "--seed", "7"]) == 0


def test_bad_config_exit_status(tmp_path, capsys):
    bad = tmp_path / "bad.ini"
    bad.write_text("[waveguide]\nomega = 10\nhopping = 0\n[perfect_cavity]\nomega_c = 10\neta = 1\n[sweep]\n")
    assert main(["sweep", str(bad)]) == 2
    assert "hopping" in capsys.readouterr().err


def test_validate_without_oracle_block(capsys):
    assert main(["validate", str(CONFIGS / "fig2a.ini")]) == 2
    assert "oracle" in capsys.readouterr().err


def test_validate_pass(tmp_path, capsys):
    report = tmp_path / "report.txt"
    assert main(["validate", str(CONFIGS / "fig2c_validate.ini"), "--report", str(report)]) == 0
    text = report.read_text()
    assert "PASS  potential" in text and "PASS  wavepacket" in text


def test_validate_coarse_modes_fails(capsys):
    assert main(["validate", str(CONFIGS / "coarse_modes.ini")]) == 1
    out = capsys.readouterr().out
    assert "FAIL  wavepacket" in out and "PASS  potential" in out


def test_figure_fig2a(tmp_path):
    (path,) = run_figure("fig2a", tmp_path)
    rows = read_csv(path)
    assert len(rows) == 1001
    assert all(abs(float(r["T+R"]) - 1) <= 1e-12 for r in rows)


def test_figure_fig5_peaks(tmp_path):
    paths = run_figure("fig5", tmp_path)
    assert len(paths) == 4
    for path in paths:
        rows = read_csv(path)
        peak = max(rows, key=lambda r: float(r["J"]))
        assert float(peak["omega"]) == 10.0
        assert float(peak["J"]) == pytest.approx(20 / (2 * math.pi), rel=1e-15)


def test_figure_fig6_pairs(tmp_path):
    (path,) = run_figure("fig6", tmp_path)
    rows = read_csv(path)
    energies = [float(r["E_k"]) for r in rows]
    i = energies.index(-1e-9)
    assert energies[i + 1] == 1e-9
    jump = float(rows[i + 1]["Im_V"]) - float(rows[i]["Im_V"])
    assert jump == pytest.approx(-20 * 16 / (2 * 116), abs=1e-8)
    assert len(rows) == 1002


def test_figure_fig2b_header(tmp_path):
    (path,) = run_figure("fig2b", tmp_path)
    first = path.read_text().splitlines()[:2]
    assert any("lambda=2*eta^2/gamma" in line for line in first)


def test_all_figures(tmp_path, capsys):
    assert main(["figure", "all", "--out", str(tmp_path)]) == 0
    printed = capsys.readouterr().out.split()
    assert len(printed) == 16
    assert {Path(p).name.split("_")[0].split(".")[0] for p in printed} == set(FIGURES)


def test_module_entry_point(tmp_path):
    proc = subprocess.run([sys.executable, "-m", "crwscatter", "figure", "fig2c", "--out", str(tmp_path)],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert (tmp_path / "fig2c.csv").exists()
