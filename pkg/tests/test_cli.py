import json
import shutil
import subprocess
import sys

import pytest

from gelfandlab.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def body(text):
    return [ln for ln in text.splitlines() if not ln.startswith("#")]


def test_critdim_row(capsys):
    code, out, _ = run(capsys, "critdim", "--s", "1", "--tol", "1e-8")
    assert code == 0
    lines = out.splitlines()
    assert lines[0].startswith("# n=-, s=1") and "version=" in lines[0]
    assert lines[2].startswith("1.0,10.000000")


def test_domain_error_exit(capsys):
    code, _, err = run(capsys, "critdim", "--s", "0.5")
    assert code == 2 and "[1, 2]" in err
    code, _, _ = run(capsys, "constants", "--n", "x", "--s", "1")
    assert code == 2
    code, _, _ = run(capsys, "no-such-command")
    assert code == 2


def test_ladder_refusal_exit(capsys):
    code, _, err = run(capsys, "ladder", "--n", "10", "--s", "1.5", "--target", "3.5")
    assert code == 3
    assert "alpha_bar=3.03407" in err


def test_ladder_reaches_target(capsys):
    code, out, _ = run(capsys, "ladder", "--n", "10", "--s", "1.5", "--target", "2.5")
    assert code == 0
    assert len(body(out)) >= 2


def test_io_error_exit(capsys, tmp_path):
    code, _, _ = run(capsys, "quartic", "--out", str(tmp_path / "missing" / "x.csv"))
    assert code == 4
    code, _, _ = run(capsys, "biharmonic", "energy", "--n", "12", "--profile", str(tmp_path / "none.csv"))
    assert code == 4


def test_json_output(capsys):
    code, out, err = run(capsys, "constants", "--n", "10,12", "--s", "1.5", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert len(data) == 2 and data[0]["n"] == 10
    assert err.startswith("# ")


def test_deterministic_output(capsys):
    outs = [run(capsys, "critdim-curve", "--steps", "5")[1] for _ in range(2)]
    assert body(outs[0]) == body(outs[1])


def test_out_file(capsys, tmp_path):
    path = tmp_path / "q.csv"
    code, out, _ = run(capsys, "quartic", "--out", str(path))
    assert code == 0 and out == ""
    assert path.read_text().startswith("# ")


def test_profile_round_trip(capsys, tmp_path):
    prof = tmp_path / "p.csv"
    code, _, _ = run(capsys, "biharmonic", "shoot", "--n", "13", "--bisect-b=-20,0", "--out", str(prof))
    assert code == 0
    code, out, _ = run(capsys, "biharmonic", "energy", "--n", "13", "--profile", str(prof), "--r-list", "1,2")
    assert code == 0
    rows = body(out)
    assert len(rows) == 3


def test_singular_energy_and_residual(capsys):
    code, out, _ = run(capsys, "biharmonic", "energy", "--n", "12", "--u", "singular", "--r-list", "1,3")
    assert code == 0
    code, out, _ = run(capsys, "biharmonic", "residual", "--n", "12", "--u", "singular")
    assert code == 0


def test_extension_build_and_energy(capsys, tmp_path):
    fld = tmp_path / "f.csv"
    code, _, _ = run(capsys, "extension", "build", "--n", "10", "--s", "1.5", "--u", "singular",
                     "--n-rho", "40", "--n-y", "40", "--out", str(fld))
    assert code == 0
    header = body(fld.read_text())[0].split(",")
    assert header[:3] == ["rho", "y", "value"]
    code, out, _ = run(capsys, "extension", "energy", "--field", str(fld), "--n", "10", "--s", "1.5")
    assert code == 0
    assert len(body(out)) == 3


def test_extension_values_only(capsys, tmp_path):
    fld = tmp_path / "v.csv"
    code, _, _ = run(capsys, "extension", "build", "--n", "10", "--s", "1.5", "--u", "zero",
                     "--n-rho", "12", "--n-y", "12", "--values-only", "--out", str(fld))
    assert code == 0
    assert body(fld.read_text())[0] == "rho,y,value"


def test_acceptance_subset(capsys):
    code, out, _ = run(capsys, "acceptance", "--only", "1,4")
    assert code == 0
    assert out.count("[PASS]") == 2


@pytest.mark.skipif(shutil.which("glab") is None, reason="console script not installed")
def test_console_script():
    out = subprocess.run(["glab", "critdim", "--s", "1"], capture_output=True, text=True)
    assert out.returncode == 0 and "10.0000000" in out.stdout


def test_module_entry():
    out = subprocess.run([sys.executable, "-m", "gelfandlab.cli", "critdim", "--s", "0.2"],
                         capture_output=True, text=True)
    assert out.returncode == 2
