"""Command-line surface: exit codes, artifacts, and flag precedence."""

from __future__ import annotations

import json
import math

from eisenkit.cli import run


def test_eval_writes_json(tmp_path, capsys):
    out = tmp_path / "val.json"
    code = run(["eval", "--chi1", "1:0", "--chi2", "4:1", "--t0", "5",
                "--x", "0.2", "--y", "1.3", "--out", str(out)])
    assert code == 0
    payload = json.loads(out.read_text())
    assert payload["schema"] == "eisenkit-eval-v1"
    assert "value" in payload
    assert "summary" not in payload
    assert capsys.readouterr().out.strip()


def test_eval_below_floor_is_a_validation_error(capsys):
    assert run(["eval", "--chi1", "1:0", "--chi2", "1:0", "--t0", "5",
                "--x", "0.0", "--y", "0.1"]) == 2


def test_unknown_subcommand(capsys):
    assert run(["transmogrify"]) == 2


def test_bad_character_syntax(capsys):
    assert run(["scatter", "--chi1", "4-1", "--chi2", "1:0", "--t0", "5"]) == 2


def test_scatter_reports_unit_modulus(tmp_path, capsys):
    out = tmp_path / "c.json"
    assert run(["scatter", "--chi1", "5:1", "--chi2", "5:3", "--t0", "7",
                "--out", str(out)]) == 0
    payload = json.loads(out.read_text())
    c = complex(payload["scattering"][0], payload["scattering"][1])
    assert abs(abs(c) - 1.0) < 1e-10


def test_fecheck_residuals(tmp_path, capsys):
    out = tmp_path / "fe.json"
    assert run(["fecheck", "--chi1", "1:0", "--chi2", "4:1", "--t0", "5",
                "--points", "4", "--out", str(out)]) == 0
    payload = json.loads(out.read_text())
    assert payload["schema"] == "eisenkit-fecheck-v1"
    assert len(payload["points"]) == 4
    assert payload["max_residual"] < 1e-6


def test_amp_csv(tmp_path, capsys):
    out = tmp_path / "amp.csv"
    assert run(["amp", "--q", "3", "--L", "10000", "--r", "20",
                "--format", "csv", "--out", str(out)]) == 0
    lines = out.read_text().strip().splitlines()
    assert lines[0].split(",")[0] == "L"
    assert "ratio" in lines[0].split(",")
    assert len(lines) == 2


def test_bessel_value_and_envelope(tmp_path, capsys):
    out = tmp_path / "k.json"
    assert run(["bessel", "--t", "5", "--x", "2.0", "--out", str(out)]) == 0
    payload = json.loads(out.read_text())
    assert payload["schema"] == "eisenkit-bessel-v1"
    assert run(["bessel", "--t", "5", "--x", "900"]) == 3
    assert "envelope" in capsys.readouterr().err.lower()


def test_lfunc_leibniz(tmp_path, capsys):
    out = tmp_path / "l.json"
    assert run(["lfunc", "--chi", "4:1", "--s", "1", "--out", str(out)]) == 0
    payload = json.loads(out.read_text())
    assert abs(payload["value"][0] - math.pi / 4) < 1e-12


def test_scan_writes_per_height_files_and_fits(tmp_path, capsys):
    prefix = tmp_path / "night"
    code = run(["scan", "--level1", "--t0", "8,16,32", "--xsteps", "6",
                "--fit", "--out", str(prefix)])
    assert code == 0
    for t in (8, 16, 32):
        assert (tmp_path / f"night-t{t}.json").exists()
        assert (tmp_path / f"night-t{t}.csv").exists()
    text = capsys.readouterr().out
    assert "fitted exponent" in text


def test_scan_fit_needs_three_heights(tmp_path, capsys):
    assert run(["scan", "--level1", "--t0", "8,16", "--xsteps", "4",
                "--fit", "--out", str(tmp_path / "s")]) == 2


def test_config_file_defaults_lose_to_flags(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("chi1 = 1:0\nchi2 = 4:1\nt0 = 5\nx = 0.2\ny = 0.9\n")
    out = tmp_path / "a.json"
    assert run(["eval", "--config", str(cfg), "--out", str(out)]) == 0
    a = json.loads(out.read_text())
    assert run(["eval", "--config", str(cfg), "--y", "2.5",
                "--out", str(out)]) == 0
    b = json.loads(out.read_text())
    assert a["y"] == 0.9
    assert b["y"] == 2.5
    assert a["value"] != b["value"]


def test_selftest_passes(capsys):
    assert run(["selftest"]) == 0
    text = capsys.readouterr().out
    assert "PASS" in text
    assert "FAIL" not in text
