"""Command-line interface: parsing, formats, exit codes, atomic output."""

import json
import os
import subprocess
import sys
from fractions import Fraction

import pytest

from starkdim import energy_series, standard_model, symbolic_energy_series
from starkdim.cli import run


def invoke(capsys, *argv):
    code = run(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# ---------------------------------------------------------------------------
# exit codes


def test_help_exits_zero(capsys):
    code, out, _ = invoke(capsys, "--help")
    assert code == 0
    assert "COMMAND" in out


def test_version_exits_zero(capsys):
    code, out, _ = invoke(capsys, "--version")
    assert code == 0
    assert "starkdim" in out


def test_unknown_command_is_usage_error(capsys):
    code, _, _ = invoke(capsys, "bogus")
    assert code == 2


def test_missing_alpha_is_usage_error(capsys):
    code, _, _ = invoke(capsys, "coeffs")
    assert code == 2


def test_malformed_alpha_is_usage_error(capsys):
    code, _, _ = invoke(capsys, "coeffs", "--alpha", "three")
    assert code == 2


def test_dimension_bound_is_input_error(capsys):
    code, _, err = invoke(capsys, "coeffs", "--alpha", "1")
    assert code == 2
    assert "error:" in err


def test_malformed_fields_is_usage_error(capsys):
    code, _, _ = invoke(capsys, "sweep", "--alpha", "3", "--fields", "0:1")
    assert code == 2


def test_zero_start_rejected_for_barrier(capsys):
    code, _, err = invoke(capsys, "wkb", "--alpha", "3",
                          "--fields", "0:1:5")
    assert code == 2
    assert "positive" in err


def test_unanchorable_calibration_is_numerical_error(capsys):
    # rates on this grid sit far below the calibration floor
    code, _, err = invoke(capsys, "wkb", "--alpha", "3",
                          "--fields", "0.001:0.002:3")
    assert code == 3
    assert "error:" in err


# ---------------------------------------------------------------------------
# coeffs


def test_coeffs_csv_exact_column(capsys):
    code, out, _ = invoke(capsys, "coeffs", "--alpha", "3")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "n,energy_coefficient,exact_value"
    assert lines[1] == "0,-0.5,-1/2"
    assert lines[2] == "2,-2.25,-9/4"
    assert lines[3].startswith("4,-55.546875,-3555/64")
    assert len(lines) == 6


def test_coeffs_fraction_alpha(capsys):
    code, out, _ = invoke(capsys, "coeffs", "--alpha", "5/2",
                          "--order", "2")
    assert code == 0
    series = energy_series(Fraction(5, 2), 2)
    rows = [line.split(",") for line in out.splitlines()[1:]]
    for k, row in enumerate(rows):
        assert row[2] == str(series.e_coeffs[k])
        assert float(row[1]) == float(series.e_coeffs[k])


def test_coeffs_symbolic_table(capsys):
    code, out, _ = invoke(capsys, "coeffs", "--alpha", "3", "--symbolic",
                          "--order", "2")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "n,factor_polynomial"
    table = symbolic_energy_series(2)
    for k, line in enumerate(lines[1:], start=1):
        n, poly = line.split(",", 1)
        assert int(n) == 2 * k
        assert poly == table.factor_polynomial(k).to_string("alpha")
        assert "alpha" in poly


# ---------------------------------------------------------------------------
# fit / sweep / wkb / dispersion output shape


def test_fit_csv_matches_library(capsys):
    code, out, _ = invoke(capsys, "fit", "--alpha", "3")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "parameter,real,imag"
    cells = {row[0]: (float(row[1]), float(row[2]))
             for row in (line.split(",") for line in lines[1:])}
    model = standard_model(3.0)
    assert cells["h1"] == (model.h1.real, model.h1.imag)
    assert cells["h1"][1] < 0.0
    assert cells["h3"][0] == model.h3.real
    assert cells["roundtrip_residual"][0] < 1e-10


def test_sweep_csv_shape(capsys):
    code, out, _ = invoke(capsys, "sweep", "--alpha", "3",
                          "--fields", "0:1:11")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "field,delta,gamma"
    assert len(lines) == 12
    first = lines[1].split(",")
    assert float(first[0]) == 0.0
    assert float(first[1]) == -0.5
    assert float(first[2]) == 0.0
    last = lines[-1].split(",")
    assert float(last[0]) == 1.0
    assert float(last[2]) > 0.0


def test_sweep_json_structure(capsys):
    code, out, _ = invoke(capsys, "sweep", "--alpha", "5/2",
                          "--fields", "0:2:5", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert set(doc) == {"meta", "data"}
    assert doc["meta"]["command"] == "sweep"
    assert doc["meta"]["alpha"] == 2.5
    assert doc["meta"]["fields"] == {"start": 0.0, "stop": 2.0, "count": 5}
    assert len(doc["data"]) == 5
    assert set(doc["data"][0]) == {"field", "delta", "gamma"}
    assert all(row["gamma"] >= 0.0 for row in doc["data"])


def test_wkb_blank_cells_over_barrier(capsys):
    code, out, _ = invoke(capsys, "wkb", "--alpha", "3",
                          "--fields", "0.05:0.3:6", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["meta"]["calibration_field"] == 0.05
    rows = doc["data"]
    assert len(rows) == 6
    below = [r for r in rows if r["y1"] is not None]
    above = [r for r in rows if r["y1"] is None]
    assert below and above
    for r in below:
        assert 0.0 < r["y1"] < r["y2"]
        assert 0.0 <= r["t_numeric"] <= 1.0
    for r in above:
        assert r["y2"] is None and r["t_numeric"] is None
        # closed form and calibrated curve are defined at any field
        assert r["t_closed"] > 0.0
        assert r["gamma_landau_calibrated"] > 0.0


def test_wkb_csv_blank_cells(capsys):
    code, out, _ = invoke(capsys, "wkb", "--alpha", "3",
                          "--fields", "0.05:0.3:6")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == ("field,y1,y2,t_numeric,t_closed,"
                       "gamma_landau_calibrated")
    blanks = [line for line in lines[1:] if ",,," in line]
    assert blanks
    for line in blanks:
        cells = line.split(",")
        assert len(cells) == 6
        assert cells[1] == cells[2] == cells[3] == ""
        assert float(cells[4]) > 0.0


def test_dispersion_csv(capsys):
    code, out, _ = invoke(capsys, "dispersion", "--alpha", "3")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == ("n,series_value,integral_value,relative_error,"
                       "upper_cutoff,node_count")
    assert len(lines) == 4
    for line, n in zip(lines[1:], (2, 3, 4)):
        cells = line.split(",")
        assert int(cells[0]) == n
        assert float(cells[3]) < 0.10


# ---------------------------------------------------------------------------
# files and determinism


def test_repeated_json_output_is_identical(capsys):
    _, first, _ = invoke(capsys, "sweep", "--alpha", "3",
                         "--fields", "0:1:21", "--format", "json")
    _, second, _ = invoke(capsys, "sweep", "--alpha", "3",
                          "--fields", "0:1:21", "--format", "json")
    assert first == second


def test_output_file_written_atomically(tmp_path, capsys):
    target = tmp_path / "table.csv"
    code, out, _ = invoke(capsys, "coeffs", "--alpha", "3",
                          "--output", str(target))
    assert code == 0
    assert out == ""
    text = target.read_text()
    assert text.startswith("n,energy_coefficient,exact_value\n")
    assert not [name for name in os.listdir(tmp_path)
                if name.startswith(".starkdim-")]


def test_failed_run_leaves_no_file(tmp_path, capsys):
    target = tmp_path / "never.csv"
    code, _, _ = invoke(capsys, "wkb", "--alpha", "3",
                        "--fields", "0.001:0.002:3",
                        "--output", str(target))
    assert code == 3
    assert not target.exists()
    assert os.listdir(tmp_path) == []


# ---------------------------------------------------------------------------
# reproduce


def test_reproduce_requires_figure(capsys):
    code, _, _ = invoke(capsys, "reproduce")
    assert code == 2


def test_reproduce_figure_one(capsys):
    code, out, _ = invoke(capsys, "reproduce", "--figure", "1")
    assert code == 0
    doc = json.loads(out)
    assert doc["meta"]["figure"] == 1
    assert doc["meta"]["alpha"] == 3.0
    assert len(doc["data"]) == 101
    assert doc["data"][0]["field"] == 0.0
    assert doc["data"][-1]["gamma"] > 0.0


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "starkdim", "--version"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0
    assert "starkdim" in proc.stdout
