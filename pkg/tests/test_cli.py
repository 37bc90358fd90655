import json
import shutil
import subprocess
import sys

import pytest

from edcert.cli import FAIL, INVALID, OK, main


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_bounds_outputs(tmp_path, capsys):
    js, tsv, png = tmp_path / "b.json", tmp_path / "b.tsv", tmp_path / "b.png"
    code, out, _ = run(["bounds", "--family", "PGL", "--params", "p=3", "r=2",
                        "--json", str(js), "--tsv", str(tsv), "--plot", str(png)], capsys)
    assert code == OK
    assert "PGL" in out and "verified" in out
    rec = json.loads(js.read_text())[0]
    assert rec["rank"] == 4 and rec["machine_verified"]
    assert tsv.read_text().splitlines()[1].split("\t")[3] == "4"
    assert png.read_bytes()[:4] == b"\x89PNG"


def test_bounds_empty(capsys):
    code, out, _ = run(["bounds"], capsys)
    assert code == OK and len(out.splitlines()) == 1


def test_bounds_invalid_params(capsys):
    code, _, err = run(["bounds", "--family", "O_n", "--params", "n"], capsys)
    assert code == INVALID and "invalid input" in err


def test_subgroup(tmp_path, capsys):
    code, out, _ = run(["subgroup", "--group", "Z2^2", "--verify-centralizer"], capsys)
    rep = json.loads(out)
    assert code == OK and rep["rank"] == 4 and rep["self_centralizing"]
    code, out, _ = run(["subgroup", "--group", "Z4"], capsys)
    assert code == OK and json.loads(out)["all_unimodular"] is False
    code, _, _ = run(["subgroup", "--group", "Z2^6xZ4"], capsys)
    assert code == INVALID


def test_code_family_and_verify_round_trip(tmp_path, capsys):
    path = tmp_path / "c.txt"
    code, out, _ = run(["code", "family", "--n", "9", "--out", str(path)], capsys)
    rep = json.loads(out)
    assert code == OK and rep["dimension"] == 4 and rep["spin_bound"].endswith(">= 5")
    copy = tmp_path / "copy.txt"
    code, _, _ = run(["code", "verify", str(path), "--out", str(copy)], capsys)
    assert code == OK and copy.read_bytes() == path.read_bytes()


def test_code_verify_rejects_bad_code(tmp_path, capsys):
    path = tmp_path / "bad.txt"
    path.write_text("1100000000\n")
    code, out, _ = run(["code", "verify", str(path)], capsys)
    assert code == FAIL and json.loads(out)["doubly_even"] is False
    code, _, _ = run(["code", "verify", str(tmp_path / "missing.txt")], capsys)
    assert code == INVALID
    code, _, _ = run(["code", "family", "--n", "12"], capsys)
    assert code == INVALID


def test_code_search(capsys):
    code, out, _ = run(["code", "search", "--n", "12", "--budget", "0.3"], capsys)
    assert code == OK and json.loads(out)["found"] is False
    code, out, _ = run(["code", "search", "--n", "8", "--budget", "0.3"], capsys)
    assert code == OK and json.loads(out)["dimension"] >= 4


def test_xmn(capsys):
    code, out, _ = run(["xmn", "--n", "6", "--m", "4", "--seed", "3"], capsys)
    rec = json.loads(out)
    assert code == OK and rec["jacobian_rank"] == 3 and rec["residual"] <= 1e-9
    code, _, _ = run(["xmn", "--n", "6", "--m", "2"], capsys)
    assert code == INVALID


def test_tschirnhaus(capsys):
    code, out, _ = run(["tschirnhaus", "--n", "3", "--m", "2"], capsys)
    assert code == OK and "b_3 = a_2**3/a_3**2" in out.replace("(", "").replace(")", "")
    assert out.strip().endswith("trdeg = 1")
    code, out, _ = run(["tschirnhaus", "--n", "4", "--m", "2", "--sub", "x + a_2", "--json", "-"], capsys)
    assert code == OK and json.loads(out)["trdeg"] == 3
    code, _, _ = run(["tschirnhaus", "--n", "4", "--m", "2", "--sub", "x**5"], capsys)
    assert code == INVALID


@pytest.mark.skipif(shutil.which("edcert") is None, reason="console script not installed")
def test_console_script():
    proc = subprocess.run(["edcert", "bounds", "--family", "G2"], capture_output=True, text=True)
    assert proc.returncode == 0 and "G2" in proc.stdout
    proc = subprocess.run([sys.executable, "-m", "edcert.cli", "bounds", "--family", "nope"],
                          capture_output=True, text=True)
    assert proc.returncode == 2
