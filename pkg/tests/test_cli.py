import io
import json
import subprocess
import sys

import numpy as np
import pytest

from framebound.cli import main
from framebound.io import write_matrix


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), out=out, err=err)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture
def mats(tmp_path):
    paths = {}
    for name, A in {"id3": np.eye(3), "t": np.diag([2.0, 1.0]), "rot": [[0.0, -1.0], [1.0, 0.0]],
                    "sing": [[1.0, 2.0], [2.0, 4.0]]}.items():
        paths[name] = str(tmp_path / f"{name}.csv")
        write_matrix(paths[name], np.array(A))
    return paths


def test_fp_identity(mats):
    code, out, _ = run("fp", "--matrix", mats["id3"], "--p", "4")
    rep = json.loads(out)
    assert code == 0 and rep["value"] == 1.0 and rep["d"] == 3
    assert {"p", "d", "value", "method", "deviation", "verdict", "seed"} <= set(rep)


def test_fp_methods(mats):
    _, out, _ = run("fp", "--matrix", mats["t"], "--p", "0.5")
    assert json.loads(out)["method"] == "sphere"
    _, out, _ = run("fp", "--matrix", mats["t"], "--p", "2", "--method", "mc", "--samples", "20000", "--seed", "9")
    rep = json.loads(out)
    assert rep["seed"] == 9 and rep["verdict"] == "consistent"


def test_deterministic(mats):
    args = ("fp", "--matrix", mats["t"], "--p", "3", "--method", "mc", "--samples", "50000", "--seed", "2")
    assert run(*args)[1] == run(*args)[1]
    args = ("verify-frame", "--group", "dihedral:5", "--p", "2", "--matrix", mats["t"])
    assert run(*args)[1] == run(*args)[1]


def test_verify_frame(mats):
    code, out, _ = run("verify-frame", "--group", "dihedral:5", "--p", "2", "--matrix", mats["t"], "--format", "text")
    assert code == 0 and "verdict: tight" in out and "seed: 0" in out
    _, out, _ = run("verify-frame", "--group", "dihedral:4", "--p", "2", "--matrix", mats["t"])
    assert json.loads(out)["verdict"] == "not-tight"


def test_molien():
    code, out, _ = run("molien", "--group", "dihedral:5", "--max-degree", "10")
    rep = json.loads(out)
    assert rep["coefficients"][:9] == [1, 0, 1, 0, 1, 1, 1, 1, 1] and rep["coefficients"][10] == 2


def test_molien_custom_group(tmp_path):
    p = tmp_path / "g.json"
    p.write_text(json.dumps([[[0, -1], [1, 0]], [[1, 0], [0, -1]]]))
    code, out, _ = run("molien", "--group-file", str(p), "--max-degree", "4")
    rep = json.loads(out)
    assert rep["order"] == 8 and rep["coefficients"] == [1, 0, 1, 0, 2]


def test_max_frame_order():
    _, out, _ = run("max-frame-order", "--group", "icosahedral:full")
    assert json.loads(out)["max_frame_order"] == 2


def test_chi2():
    _, out, _ = run("chi2-moment", "--weights", "1,2", "--p", "2")
    assert json.loads(out)["exact"] == "19"
    _, out, _ = run("chi2-moment", "--weights", "1/2", "--p", "1")
    assert json.loads(out)["exact"] == "1/2"


def test_moments(mats):
    code, out, _ = run("moments", "--shape-json", '{"regular":{"n":5}}', "--p", "2", "--matrix", mats["t"], "--reciprocity")
    rep = json.loads(out)
    assert code == 0
    assert rep["transformed_moment"] == pytest.approx(rep["image"]["moment"], rel=1e-8)


def test_bounds(mats):
    _, out, _ = run("bounds", "plate", "--ratio", "1.1", "--order", "1", "--ref", "104.36")
    assert json.loads(out)["value"] == pytest.approx(106.262, abs=5e-4)
    _, out, _ = run("bounds", "kg", "--matrix", mats["t"], "--mass", "1", "--ref", "1")
    assert json.loads(out)["rescaled"]["mass"] == pytest.approx(0.5 * 10**0.5 / 2)
    _, out, _ = run("bounds", "perimeter", "--a", "2", "--b", "1", "--alpha", "0.5", "--ref", "1")
    assert json.loads(out)["operator"] == "fractional-ellipse"


def test_tables():
    code, out, _ = run("tables", "plate")
    assert code == 0 and "106.262" in out and "654.7" in out
    _, out, _ = run("tables", "buckling", "--format", "json")
    assert json.loads(out)["rows"]["2-frames"][0] == pytest.approx(15.17, abs=0.005)


def test_sandwich(mats):
    _, out, _ = run("sandwich", "--matrix", mats["t"], "--p", "2")
    rep = json.loads(out)
    assert rep["lower"] == 6.25 and rep["upper"] == 8.5 and rep["holds"]


@pytest.mark.parametrize(
    "argv",
    [
        ("fp", "--matrix", "/nonexistent.csv", "--p", "2"),
        ("molien", "--group", "nope:3"),
        ("bounds", "subordinator", "--ratio", "2", "--ref", "1"),
        ("moments", "--shape-json", '{"ellipse": [1, 0]}', "--p", "1"),
    ],
)
def test_errors_exit_2(argv):
    code, out, err = run(*argv)
    assert code == 2 and out == "" and err.count("\n") == 1


def test_singular_matrix_exit_2(mats):
    code, _, err = run("bounds", "plate", "--matrix", mats["sing"], "--ref", "1")
    assert code == 2 and "singular" in err


def test_bad_csv_has_line_context(tmp_path):
    p = tmp_path / "bad.csv"
    p.write_text("1,2\n3,oops\n")
    code, _, err = run("fp", "--matrix", str(p), "--p", "2")
    assert code == 2 and "bad.csv:2:" in err


def test_unknown_flag_rejected():
    with pytest.raises(SystemExit) as exc:
        run("molien", "--group", "dihedral:5", "--bogus")
    assert exc.value.code == 2


def test_module_entry_point(mats):
    res = subprocess.run([sys.executable, "-m", "framebound", "fp", "--matrix", mats["id3"], "--p", "2"],
                         capture_output=True, text=True)
    assert res.returncode == 0 and json.loads(res.stdout)["value"] == 1.0
