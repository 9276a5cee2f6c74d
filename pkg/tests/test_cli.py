import json
import math
import subprocess
import sys

import pytest

from calogero import cli
from calogero.cli import fmt_float, read_csv

FIG3_FLAGS = ["--nu", "1.05", "--alpha", "1.65", "--beta", "0.314"]


def run(*args, cwd=None):
    return subprocess.run(
        [sys.executable, "-m", "calogero", *args], capture_output=True, text=True, cwd=cwd, timeout=600
    )


# ------------------------------------------------------------ formatting


def test_fmt_float():
    assert fmt_float(0.1) == "1.000000000000e-01"
    assert fmt_float(math.inf) == "inf"
    assert fmt_float(-math.inf) == "-inf"
    assert fmt_float(math.nan) == "nan"


def test_dump_json_sorted_and_stable():
    text = cli.dump_json({"b": 1.5, "a": [True, None, "x"], "c": {"z": 2, "y": -math.inf}})
    doc = json.loads(text)
    assert list(doc) == ["a", "b", "c"]
    assert doc["b"] == 1.5 and doc["c"]["y"] == "-inf"
    assert text == cli.dump_json(json.loads(text) | {"b": 1.5, "c": {"z": 2, "y": -math.inf}})


# ------------------------------------------------------------ spectrum


def test_spectrum_free_case_json():
    res = run("spectrum", "--case", "free", "--nu", "0.8", "--levels", "5")
    assert res.returncode == 0, res.stderr
    doc = json.loads(res.stdout)
    assert doc["schema_version"] == 1 and doc["kind"] == "spectrum"
    assert doc["permissible"] is True
    assert len(doc["levels"]) == 5
    c = math.sqrt(3 / 8)
    assert doc["levels"][0]["E"] == pytest.approx(2 * c * 1.6, rel=1e-11)
    assert doc["levels"][0]["reps"] == ["++"]
    assert doc["config"]["separating"] is False


def test_spectrum_output_is_byte_deterministic():
    a = run("spectrum", "--nu", "0.7", "--alpha", "-1.5707963", "--beta", "0.9", "--emax", "12")
    b = run("spectrum", "--nu", "0.7", "--alpha", "-1.5707963", "--beta", "0.9", "--emax", "12")
    assert a.returncode == 0 and a.stdout == b.stdout


def test_json_and_csv_round_trip():
    flags = ["spectrum", "--case", "dirichlet", "--nu", "0.6", "--levels", "8"]
    doc = json.loads(run(*flags).stdout)
    kind, header, rows = read_csv(run(*flags, "--format", "csv").stdout)
    assert kind.startswith("spectrum")
    assert header == ["E", "m", "mu", "lambda", "series", "reps", "multiplicity"]
    assert len(rows) == len(doc["levels"])
    for row, lv in zip(rows, doc["levels"]):
        rec = dict(zip(header, row))
        # the serialized precision is exact in both directions
        assert fmt_float(float(rec["E"])) == rec["E"]
        assert float(rec["E"]) == lv["E"] and float(rec["mu"]) == lv["mu"]
        assert rec["series"] == lv["series"] and int(rec["multiplicity"]) == lv["multiplicity"]
        assert rec["reps"].split(" ") == lv["reps"]


def test_expand_pairs():
    flags = ["spectrum", "--case", "free", "--nu", "0.8", "--levels", "6"]
    plain = json.loads(run(*flags).stdout)["levels"]
    expanded = json.loads(run(*flags, "--expand-pairs").stdout)["levels"]
    pairs = [lv for lv in plain if lv["series"].startswith("Type2")]
    assert pairs
    assert len(expanded) == len(plain) + len(pairs)
    assert sum(lv["multiplicity"] for lv in expanded) == sum(lv["multiplicity"] for lv in plain)
    signs = sorted(lv["tau_im"] for lv in expanded if lv["series"].startswith("Type2"))
    assert signs == sorted([1, -1] * len(pairs))
    _, header, rows = read_csv(run(*flags, "--expand-pairs", "--format", "csv").stdout)
    assert header[-1] == "tau_im" and len(rows) == len(expanded)


def test_impermissible_configuration_report():
    res = run("spectrum", *FIG3_FLAGS, "--emax", "10")
    assert res.returncode == 0, res.stderr
    doc = json.loads(res.stdout)
    assert doc["permissible"] is False
    assert doc["levels"] == []
    perm = doc["permissibility"]
    assert perm["type2_negative_count"] == 4
    assert all(lv["lambda"] < 0 for lv in perm["negative_levels"])


def test_negative_window_opt_in():
    res = run("spectrum", *FIG3_FLAGS, "--emax", "10", "--negative-window", "-30", "-10")
    doc = json.loads(res.stdout)
    assert doc["negative_branches"]
    energies = [e for br in doc["negative_branches"] for e in br["E"]]
    assert energies and all(-30 * 4 * math.sqrt(3 / 8) <= e < 0 for e in energies)


def test_config_file_with_flag_override(tmp_path):
    cfg = tmp_path / "run.toml"
    cfg.write_text('case = "free"\nnu = 0.8\nlevels = 3\nformat = "csv"\n')
    out = tmp_path / "out.csv"
    res = run("spectrum", "--config", str(cfg), "--levels", "4", "--out", str(out))
    assert res.returncode == 0, res.stderr
    _, header, rows = read_csv(out.read_text())
    assert header[0] == "E" and len(rows) == 4


def test_config_file_unknown_key(tmp_path):
    cfg = tmp_path / "bad.toml"
    cfg.write_text("nu = 0.8\ncolour = 3\n")
    assert run("spectrum", "--config", str(cfg)).returncode == 2


@pytest.mark.parametrize(
    "flags",
    [
        ["--nu", "0.4", "--case", "free"],
        ["--nu", "1.0", "--alpha", "0.3", "--beta", "0.2"],
        ["--nu", "0.8", "--case", "free", "--alpha", "0.1"],
        ["--nu", "0.8", "--case", "free", "--omega", "-1"],
        ["--nu", "0.8"],
        ["--bogus"],
    ],
)
def test_invalid_input_exit_code(flags):
    res = run("spectrum", *flags)
    assert res.returncode == 2


def test_out_of_range_message_cites_range():
    res = run("spectrum", "--nu", "0.4", "--case", "free")
    assert "1/2 < nu < 3/2" in res.stderr


def test_numerical_failure_exit_code(monkeypatch, capsys):
    def boom(cfg):
        raise ArithmeticError("bracketing failed")

    monkeypatch.setattr(cli, "compute_spectrum", boom)
    assert cli.main(["spectrum", "--case", "free", "--nu", "0.8"]) == 3
    assert "bracketing failed" in capsys.readouterr().err


# ------------------------------------------------------------ figure data


def test_figure2_poles(tmp_path):
    assert run("figure-data", "2", "--out-dir", str(tmp_path)).returncode == 0
    _, header, rows = read_csv((tmp_path / "fig2_poles.csv").read_text())
    poles_a = [float(r[2]) for r in rows if r[0] == "A"]
    assert poles_a[:2] == pytest.approx([5 / 3, 11 / 3], abs=1e-11)
    _, header, rows = read_csv((tmp_path / "fig2_type1.csv").read_text())
    assert header == ["mu", "F_A", "F_B"] and len(rows) == 8001
    # the samples nearest a pole are left empty
    assert any(r[1] == "" for r in rows) and any(r[2] == "" for r in rows)


def test_figure3_files(tmp_path):
    assert run("figure-data", "3", "--out-dir", str(tmp_path)).returncode == 0
    _, _, roots = read_csv((tmp_path / "fig3_left_roots.csv").read_text())
    assert len(roots) == 4
    _, header, _ = read_csv((tmp_path / "fig3_right.csv").read_text())
    assert header == ["mu", "F2", "first_term"]


def test_figure4_poles(tmp_path):
    assert run("figure-data", "4", "--out-dir", str(tmp_path)).returncode == 0
    _, _, rows = read_csv((tmp_path / "fig4_poles.csv").read_text())
    first = (1 - math.sqrt(0.2)) / 2
    assert [float(r[1]) for r in rows[:3]] == pytest.approx([first, first + 1, first + 2], abs=1e-11)


def test_figure5_ladders(tmp_path):
    assert run("figure-data", "5", "--out-dir", str(tmp_path)).returncode == 0
    _, header, rows = read_csv((tmp_path / "fig5_ladders.csv").read_text())
    rec = [dict(zip(header, r)) for r in rows]
    mult = {r["series"]: int(r["multiplicity"]) for r in rec}
    assert mult["SepA"] == 6 and mult["SepB"] == 6
    assert mult["A+"] == 1 and mult["Type2(+1/2)"] == 2
    assert {r["case"] for r in rec} >= {"DirichletMinusOne"}
    assert len({r["case"] for r in rec}) == 4


def test_unknown_figure():
    assert run("figure-data", "7").returncode == 2


# ------------------------------------------------------------ permissibility map


def _map(*flags):
    res = run("permissible-map", *flags)
    assert res.returncode == 0, res.stderr
    _, header, rows = read_csv(res.stdout)
    return [dict(zip(header, r)) for r in rows]


def test_map_separating_column():
    rows = _map("--nu", "0.8", "--alpha", "-1", "1", "2", "--beta", "0", "0.5", "2")
    assert [r["separating"] for r in rows if float(r["beta"]) == 0.0] == ["true", "true"]
    # row-major: alpha outer, beta inner
    assert [(float(r["alpha"]), float(r["beta"])) for r in rows] == [(-1, 0), (-1, 0.5), (1, 0), (1, 0.5)]


def test_map_figure3_cell():
    a, b = 11 * math.pi / 20, math.pi / 10
    rows = _map("--nu", "1.05", "--alpha", repr(a), repr(a), "1", "--beta", repr(b), repr(b), "1")
    assert rows[0]["permissible"] == "false" and int(rows[0]["type2_negative_count"]) == 4


def test_map_positivity_row():
    rows = _map("--nu", "0.8", "--alpha", repr(-math.pi / 2), repr(-math.pi / 2), "1", "--beta", "0.1", "1.5", "4")
    assert all(r["permissible"] == "true" for r in rows)


def test_map_workers_do_not_change_output():
    flags = ["permissible-map", "--nu", "0.9", "--alpha", "-2", "2", "3", "--beta", "0.2", "2.8", "3"]
    assert run(*flags).stdout == run(*flags, "--workers", "3").stdout


def test_map_grid_too_large():
    assert run("permissible-map", "--nu", "0.8", "--alpha", "0", "1", "2000", "--beta", "0", "1", "2000").returncode == 2


# ------------------------------------------------------------ validate


def test_validate_json_subset():
    res = run("validate", "--only", "1,5", "--format", "json")
    assert res.returncode == 0, res.stderr
    doc = json.loads(res.stdout)
    assert doc["kind"] == "validation" and doc["fault_injected"] is False
    assert [c["id"] for c in doc["criteria"]] == [1, 5]
    assert all(c["passed"] for c in doc["criteria"])


def test_validate_fault_injection_fails():
    res = run("validate", "--only", "9", "--inject-fault")
    assert res.returncode == 1
    assert "9" in res.stderr


def test_validate_unknown_id():
    assert run("validate", "--only", "11").returncode == 2
