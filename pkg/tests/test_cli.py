import json
import subprocess
import sys

import pytest

from lambdaq.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_classify_text(capsys):
    code, out, _ = run(capsys, "--field", "Q", "--q", "2", "--point", "1,-2,0", "classify")
    assert code == 0
    assert "agree" in out and "semi_gp" in out


def test_classify_gp_over_f5(capsys):
    code, out, _ = run(capsys, "--field", "Fp:5", "--q", "2", "--point", "1,0,1", "--format", "json",
                       "classify")
    doc = json.loads(out)
    assert code == 0 and doc["agree"]
    assert doc["closed_form"]["gorenstein_projective"] is True
    assert doc["computational"]["gorenstein_projective"] is True


def test_syzygy_steps(capsys):
    code, out, _ = run(capsys, "--point", "1,1,2", "--count", "2", "--format", "json", "syzygy")
    doc = json.loads(out)
    assert code == 0
    assert [s["formula"] for s in doc["steps"]] == ["M(1:2:-1)", "M(1:4:1/3)"]
    assert all(s["certificate"] == "certified" for s in doc["steps"])


def test_syzygy_detects_cycle(capsys):
    code, out, _ = run(capsys, "--point", "1,0,0", "--count", "3", "syzygy")
    assert code == 0 and "period 1" in out


def test_syzygy_stops_at_decomposable(capsys):
    code, out, _ = run(capsys, "--point", "1,-1,0", "--count", "4", "syzygy")
    assert code == 0 and "walk ends" in out and out.count("Omega M") == 1


def test_dual_right(capsys):
    code, out, _ = run(capsys, "--point", "1,-1,0", "--side", "right", "--format", "json", "dual")
    doc = json.loads(out)
    assert code == 0 and doc["dual_dim"] == 4 and doc["branch"] == 3


def test_quiver_dot_to_file(tmp_path, capsys):
    target = tmp_path / "q.dot"
    code, out, _ = run(capsys, "--field", "Fp:5", "--q", "2", "--seeds", "1,-2,1", "--format", "dot",
                       "--out", str(target), "quiver")
    assert code == 0 and out == ""
    text = target.read_text()
    assert text.startswith("digraph") and "A(4)" in text


def test_appendix_case(capsys):
    code, out, _ = run(capsys, "--point", "1,2,3", "appendix-case")
    assert code == 0 and "case (7)" in out


def test_verify_single_check(capsys):
    code, out, _ = run(capsys, "--field", "Fp:2", "--q", "1", "--format", "json", "verify", "--check", "1")
    doc = json.loads(out)
    assert code == 0 and doc["summary"]["pass"] == 1


@pytest.mark.parametrize("argv", [
    ["--point", "0,0,0", "classify"],
    ["classify"],
    ["--field", "Fp:4", "--point", "1,1,1", "classify"],
    ["--q", "0", "--point", "1,1,1", "classify"],
    ["--point", "0,1,0", "dual"],
    ["--format", "dot", "--point", "1,1,1", "classify"],
    ["--depth", "0", "--point", "1,1,1", "classify"],
    ["verify", "--check", "99"],
])
def test_invalid_input_exits_nonzero(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 2 and out == "" and err.startswith("error:")


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "lambdaq", "--point", "1,1,2", "syzygy"],
                         capture_output=True, text=True, check=False)
    assert res.returncode == 0 and "M(1:2:-1)" in res.stdout
