import io
import json
import subprocess
import sys

import pytest

from qbundle.cli import main


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out)
    return code, out.getvalue()


def test_qdet_and_minor():
    code, text = run("qdet", "--n", "2")
    assert code == 0 and text.strip() == "t[1,1]*t[2,2] - q*t[1,2]*t[2,1]"
    code, text = run("minor", "1,2", "2,3", "--n", "3")
    assert code == 0 and text.strip() == "t[1,2]*t[2,3] - q*t[1,3]*t[2,2]"


def test_normalize_specialized():
    code, text = run("normalize", "t[2,2]*t[1,1]", "--q", "2")
    assert code == 0 and text.strip() == "t[1,1]*t[2,2] + (-3/2)*t[1,2]*t[2,1]"


def test_normalize_with_ore_set():
    code, text = run("normalize", "inv(t[2,2])*t[1,2]*t[2,2]", "--set", "S_id")
    # d b = q^-1 b d, so d^-1 b d = q b
    assert code == 0 and text.strip() == "q*t[1,2]"


def test_laplace_check_command():
    code, text = run("laplace-check", "1,2", "1,3", "--n", "3")
    assert code == 0 and "pass=4 fail=0" in text


def test_ore_solve_command():
    code, text = run("ore-solve", "--set", "S_id", "--r", "t[1,1]", "--s", "t[2,2]")
    assert code == 0
    assert "r' = t[1,1]*t[2,2] + (-q + q^-3)*t[1,2]*t[2,1]" in text
    assert "s' = t[2,2]*t[2,2]" in text


def test_ore_solve_inconclusive_exit_code():
    code, _ = run("ore-solve", "--set", "S_id", "--r", "t[1,1]", "--s", "t[2,2]", "--bound", "1")
    assert code == 3


def test_gauss_command_json():
    code, text = run("gauss", "--n", "2", "--sigma", "21", "--json", "--no-timing")
    doc = json.loads(text)
    assert code == 0
    assert doc["chart"]["entries"]["U[1,2]"] == "inv(t[1,2])*(q*t[2,2])"
    assert doc["reports"][0]["suite"] == "thm9"


def test_check_passing_exit_code():
    assert run("check", "--n", "2", "--suite", "thm9,quasidet")[0] == 0


def test_failure_exit_code(tmp_path):
    p = tmp_path / "c.cfg"
    p.write_text("n = 2\nsuites = quasidet\nquasidetConvention = printed\n")
    code, text = run("check", "--config", str(p))
    assert code == 1
    assert "[fail]" in text and "witness: residual" in text


@pytest.mark.parametrize("argv", [
    ["check", "--n", "5"],
    ["check", "--suite", "nope"],
    ["normalize", "t[1,"],
    ["minor", "2,1", "1,2"],
    ["check", "--sigma", "123", "--n", "2"],
    ["check", "--q", "0"],
    ["frobnicate"],
    ["gauss", "--n", "3", "--blocks", "1,2"],
])
def test_usage_errors(argv, capsys):
    assert run(*argv)[0] == 2


def test_config_file(tmp_path):
    p = tmp_path / "run.cfg"
    p.write_text("# sample\nn = 3\nq = 3/2\noreBound = 3\nsigmas = 231 id\nsuites = thm9, thm11\ntiming = false\n")
    code, text = run("check", "--config", str(p), "--json")
    doc = json.loads(text)
    assert code == 0
    assert doc["config"]["q"] == "3/2" and doc["config"]["sigmas"] == ["2,3,1", "1,2,3"]
    assert [r["suite"] for r in doc["reports"]] == ["thm9-compat", "thm9", "thm11i", "thm11ii"]
    assert all(c["ms"] == 0 for r in doc["reports"] for c in r["cases"])


def test_unknown_config_key(tmp_path):
    p = tmp_path / "bad.cfg"
    p.write_text("colour = blue\n")
    assert run("check", "--config", str(p))[0] == 2


def test_json_is_deterministic():
    a = run("report", "--n", "2", "--seed", "5", "--no-timing")[1]
    b = run("report", "--n", "2", "--seed", "5", "--no-timing")[1]
    assert a == b
    doc = json.loads(a)
    assert list(doc) == ["version", "config", "reports"]
    assert doc["config"]["seed"] == 5
    assert list(doc["reports"][0]["cases"][0]) == ["name", "status", "lhs", "rhs", "witness", "ms"]


def test_console_entry_point():
    res = subprocess.run([sys.executable, "-m", "qbundle", "qdet", "--n", "1"], capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout.strip() == "t[1,1]"
