import json
import math

import pytest

from boundrot.cli import OUT_DIR_ENV, run


def _json(capsys, argv, code=0):
    assert run(argv) == code
    return json.loads(capsys.readouterr().out)


def test_bounds_k2(capsys):
    out = _json(capsys, ["bounds", "--k", "2", "--r", "0.5"])
    assert out["growth"]["lower"] == pytest.approx(2 / 9)
    assert out["growth"]["upper"] == pytest.approx(2.0)
    assert out["distortion"]["upper"] == pytest.approx(12.0)
    assert out["pk_disk"] == {"center": pytest.approx(5 / 3), "radius": pytest.approx(4 / 3)}


def test_bounds_text_uses_symbols(capsys):
    assert run(["bounds", "--k", "4", "--r", "0.5", "--format", "text"]) == 0
    text = capsys.readouterr().out
    assert "|f'(z)|" in text and "R_{S*}" in text and "lower clamped" in text


def test_coeff(capsys):
    out = _json(capsys, ["coeff", "--k", "4", "--n", "3"])
    assert out["Rk"] == pytest.approx(10)
    assert out["Vk"] == pytest.approx(10 / 3)
    assert out["Pk"] == 4


def test_extremal(capsys):
    out = _json(capsys, ["extremal", "--k", "3", "--order", "4"])
    assert [c[0] for c in out["f*"][:4]] == pytest.approx([0, 1, -3, 5.5])
    assert [c[0] for c in out["p*"][1:5]] == pytest.approx([-3, 2, -3, 2])


def test_series_from_measure(tmp_path, capsys):
    path = tmp_path / "mu.json"
    path.write_text(json.dumps({"atoms": [[0.0, 2.0]]}))
    out = _json(capsys, ["series", "--measure", str(path), "--kind", "Rk", "--order", "5"])
    assert [c[0] for c in out["coeffs"]] == pytest.approx([0, 1, 2, 3, 4, 5])
    assert out["kind"] == "Rk" and out["k"] == 2
    assert out["provenance"]["type"] == "measure"


def test_series_from_schwarz(tmp_path, capsys):
    path = tmp_path / "phi.json"
    path.write_text(json.dumps({"c": [0.5, 0.0], "zeros": []}))
    out = _json(capsys, ["series", "--schwarz", str(path), "--kind", "Pk", "--order", "3"])
    assert [c[0] for c in out["coeffs"]] == pytest.approx([1, 1, 0.5, 0.25])


def test_series_bad_measure_is_usage_error(tmp_path, capsys):
    path = tmp_path / "mu.json"
    path.write_text(json.dumps({"atoms": [[0.0, 1.0]]}))
    assert run(["series", "--measure", str(path)]) == 2
    assert "mass" in capsys.readouterr().err


def test_verify_disk_passes(capsys):
    out = _json(capsys, ["verify", "disk", "--k", "3", "--samples", "200", "--seed", "7"])
    assert out["pass"] is True and out["check"] == "disk" and out["seed"] == 7


def test_verify_broken_tolerance_exits_1(capsys):
    assert run(["verify", "disk", "--k", "3", "--samples", "5", "--tol", "-1"]) == 1
    assert json.loads(capsys.readouterr().out)["pass"] is False


@pytest.mark.parametrize("argv, flag", [
    (["bounds", "--k", "1", "--r", "0.5"], "--k"),
    (["bounds", "--k", "2", "--r", "1.0"], "--r"),
    (["bounds", "--k", "abc", "--r", "0.5"], "--k"),
    (["extremal", "--k", "3", "--order", "1"], "--order"),
    (["verify", "disk", "--samples", "0"], "--samples"),
    (["report", "--k-list", "2,1"], "--k-list"),
])
def test_usage_errors(capsys, argv, flag):
    assert run(argv) == 2
    assert flag in capsys.readouterr().err


def test_unknown_subcommand(capsys):
    assert run(["frobnicate"]) == 2


def test_deterministic_output_modulo_timestamp(capsys):
    argv = ["verify", "coeff", "--k", "4", "--samples", "20", "--seed", "3", "--timestamp"]
    a = _json(capsys, argv)
    b = _json(capsys, argv)
    assert "generated_at" in a
    a.pop("generated_at"), b.pop("generated_at")
    assert json.dumps(a, sort_keys=True) == json.dumps(b, sort_keys=True)
    argv = argv[:-1]
    run(argv)
    first = capsys.readouterr().out
    run(argv)
    assert capsys.readouterr().out == first


def test_csv_and_out_dir(tmp_path, monkeypatch):
    monkeypatch.setenv(OUT_DIR_ENV, str(tmp_path))
    assert run(["verify", "growth", "--k", "3", "--samples", "4", "--format", "csv"]) == 0
    text = (tmp_path / "verify-growth.csv").read_text().splitlines()
    assert text[0].startswith("index,seed,max_violation") and len(text) == 5
    assert run(["coeff", "--k", "2", "--n", "5", "--out", "c.json"]) == 0
    assert json.loads((tmp_path / "c.json").read_text())["Rk"] == 5


def test_report_small(capsys):
    out = _json(capsys, ["report", "--all", "--k-list", "2,3", "--samples", "5", "--seed", "1"])
    checks = {(r["check"], r["k"]) for r in out["reports"]}
    assert ("rotation", 3.0) in checks and ("mean_value", 2.0) in checks
    assert out["pass"] is True


def test_report_text_flags_open_gap(capsys):
    assert run(["verify", "coeff", "--k", "3", "--samples", "5", "--format", "text"]) == 0
    text = capsys.readouterr().out
    assert "open: |a_3| bound 6 vs f* 5.5" in text
