import csv
import io
import json
import math

import numpy as np
import pytest

from leeosc.cli import main
from leeosc.fixtures import format_matrix, load_fixture, parse_matrix, write_fixtures


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def rows(text):
    return list(csv.DictReader(io.StringIO(text)))


def test_classify_grid(capsys):
    code, out, _ = run(capsys, "classify", "--steps", "5")
    assert code == 0
    table = rows(out)
    assert len(table) == 25
    origin = next(r for r in table if float(r["gamma"]) == 0 and float(r["lambda"]) == 0)
    assert float(origin["f"]) == 1.0
    assert list(table[0]) == ["gamma", "lambda", "f", "det_sign", "neg_count", "case_label"]


def test_classify_case2_row(capsys):
    code, out, _ = run(capsys, "classify", "--gamma-range", "-1", "1", "--lambda-range", "-1", "1", "--steps", "3")
    r = next(r for r in rows(out) if float(r["gamma"]) == 1 and float(r["lambda"]) == 1)
    assert float(r["f"]) == -2.0 and r["neg_count"] == "1"


def test_classify_boundary_row(capsys):
    g = (math.sqrt(5) - 1) / 2
    code, out, _ = run(capsys, "classify", "--gamma-range", str(g), "1", "--lambda-range", "0", "1", "--steps", "2")
    r = rows(out)[0]
    assert abs(float(r["f"])) < 1e-9 and r["case_label"] == "Boundary"


@pytest.mark.parametrize("argv", [["classify", "--steps", "1"], ["classify", "--gamma-range", "1", "0"], ["bogus"]])
def test_usage_errors(capsys, argv):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    assert exc.value.code == 2
    capsys.readouterr()


def test_quantize_case1(capsys):
    code, out, _ = run(capsys, "quantize", "--fixture", "case1")
    rep = json.loads(out)
    assert code == 0 and rep["pipelineBranch"] == "bopp"
    assert rep["bopp"]["b4"] == 1.0
    assert rep["bopp"]["b3"] == pytest.approx(math.sqrt(40 / 21), abs=1e-12)
    mx, my = rep["decoupled"]["modeX"], rep["decoupled"]["modeY"]
    assert (mx["pCoeff"], mx["qCoeff"]) == pytest.approx((1.0, 1 / 3), abs=1e-12)
    assert (my["pCoeff"], my["qCoeff"]) == pytest.approx((1.0, 8 / 3), abs=1e-12)
    assert all(lv["im"] == 0.0 and lv["regime"] == "real" for lv in rep["spectrumSample"])
    assert len(rep["spectrumSample"]) == 16


def test_quantize_case2(capsys):
    code, out, _ = run(capsys, "quantize", "--fixture", "case2")
    rep = json.loads(out)
    assert rep["pipelineBranch"] == "relabel" and rep["relabelMap"]["X"] == "P~_X"
    assert rep["decoupled"]["relativeSign"] == -1
    for lv in rep["spectrumSample"]:
        assert lv["im"] == pytest.approx(lv["m"] + 0.5, abs=1e-12)


def test_quantize_origin(capsys):
    code, out, _ = run(capsys, "quantize", "--gamma", "0", "--lambda", "0")
    rep = json.loads(out)
    assert code == 0 and rep["pipelineBranch"] in ("bopp", "relabel", "unsupported")
    assert "commutatorTable" in rep


def test_quantize_is_deterministic(capsys, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert main(["quantize", "--fixture", "case1", "--out", str(a)]) == 0
    assert main(["quantize", "--fixture", "case1", "--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()
    assert '"gamma": -1.0' in a.read_text()


def test_spectrum_table(capsys):
    code, out, _ = run(capsys, "spectrum", "--fixture", "case2", "--nmax", "1", "--mmax", "2")
    levels = json.loads(out)
    assert len(levels) == 6 and set(levels[0]) == {"n", "m", "re", "im", "regime"}


def test_spectrum_eigenfunction(capsys):
    code, out, _ = run(capsys, "spectrum", "--fixture", "case2", "--eigenfunction", "y", "--index", "2")
    f = json.loads(out)
    assert code == 0 and f["classTag"] == "tempered" and len(f["polyCoeffs"]) == 3


def test_simulate_lee_unit(capsys):
    code, out, _ = run(capsys, "simulate", "--x0", "1", "--vy0", "1", "--dt", "0.01", "--T", "6.283185307179586")
    t = rows(out)
    p = np.array([float(r["p_lambda"]) for r in t])
    assert code == 0 and np.ptp(p) < 1e-10
    assert float(t[-1]["x"]) == pytest.approx(1.0, abs=1e-8)


def test_simulate_case2_conservation(capsys):
    code, out, _ = run(capsys, "simulate", "--gamma", "1", "--lambda", "1", "--x0", "1", "--vy0", "1", "--stride", "100")
    p = np.array([float(r["p_lambda"]) for r in rows(out)])
    assert len(p) == 1001 and np.ptp(p) < 1e-10


def test_simulate_bateman_envelope(capsys):
    code, out, _ = run(capsys, "simulate", "--system", "bateman", "--gamma", "0.1", "--x0", "1", "--y0", "1",
                       "--dt", "0.01", "--T", "50")
    t = rows(out)
    x = np.array([float(r["x"]) for r in t])
    y = np.array([float(r["y"]) for r in t])
    n = len(t) // 10
    assert np.abs(x[-n:]).max() < np.abs(x[:n]).max() and np.abs(y[-n:]).max() > np.abs(y[:n]).max()


def test_simulate_blow_up_exit_code(capsys):
    code, out, err = run(capsys, "simulate", "--system", "bateman", "--gamma", "3", "--y0", "1", "--dt", "0.01")
    assert code == 3 and "blow-up" in err


def test_verify_passes(capsys):
    code, out, _ = run(capsys, "verify")
    assert code == 0 and "FAIL" not in out


def test_verify_perturbed_fixture(capsys, tmp_path):
    write_fixtures(tmp_path)
    S = load_fixture("case1", tmp_path) + 1e-3
    (tmp_path / "case1_S.txt").write_text(format_matrix(S))
    code, out, _ = run(capsys, "verify", "--fixture-dir", str(tmp_path))
    assert code == 1
    line = next(l for l in out.splitlines() if "S orthogonal case1" in l)
    assert line.startswith("FAIL")


def test_verify_missing_fixture(capsys, tmp_path):
    code, _, err = run(capsys, "verify", "--fixture-dir", str(tmp_path))
    assert code == 1 and str(tmp_path / "case1_S.txt") in err


def test_fixture_round_trip(tmp_path):
    write_fixtures(tmp_path)
    for name in ("case1", "case2"):
        text = (tmp_path / f"{name}_S.txt").read_text()
        assert np.array_equal(parse_matrix(text), load_fixture(name))


def test_parse_matrix_rejects_bad_shape():
    with pytest.raises(ValueError):
        parse_matrix("1 2 3\n")
