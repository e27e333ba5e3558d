import json
import re
import shutil
import subprocess
import sys

import pytest

from finring.cli import main
from finring.corpus import CORPUS_DIR


def ring(name):
    return str(CORPUS_DIR / f"{name}.ring")


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_decompose_z6(capsys):
    code, out, _ = run(capsys, "decompose", ring("z6"))
    assert code == 0 and out == "[(1,2)^1, (1,3)^1]\n"


def test_decompose_rejects_radical_with_witness(capsys):
    code, out, _ = run(capsys, "decompose", ring("z4"), "--format", "json")
    data = json.loads(out)
    assert code == 1 and data["semisimple"] is False and data["witness"] == [2]


def test_nil_freenil(capsys):
    code, out, _ = run(capsys, "nil", ring("freenil_p2_g2"), "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["nilexponent"] == 2 and data["nilpotency_class"] == 3
    code, out, _ = run(capsys, "nil", ring("freenil_p2_g2"))
    assert "nilexponent 2" in out and "class 3" in out


def test_radical_command(capsys):
    code, out, _ = run(capsys, "radical", ring("z8"), "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["radical_order"] == 4 and data["routes_agree"]


def test_aut_and_budget(capsys):
    code, out, _ = run(capsys, "aut", ring("m2f2"), "--format", "json")
    assert code == 0 and json.loads(out)["order"] == 6
    code, _, err = run(capsys, "aut", ring("m2f2"), "--budget", "3")
    assert code == 3 and "budget" in err


def test_orbits_command(capsys):
    code, out, _ = run(capsys, "orbits", ring("z2"), "-m", "3", "-n", "1")
    assert code == 0 and out.startswith("4 orbits")


def test_freenil_command(capsys):
    code, out, _ = run(capsys, "freenil", "-p", "2", "-g", "2")
    assert code == 0 and out == (CORPUS_DIR / "freenil_p2_g2.ring").read_text()
    code, out, _ = run(capsys, "freenil", "-p", "3", "--tower", "2", "--format", "json")
    assert code == 0 and json.loads(out)["rows"] == [[1, 9, 3, 3], [2, 3 ** 8, 3, 5]]


def test_bounds_command(capsys):
    code, out, _ = run(capsys, "bounds", "-m", "2", "-s", str(2 ** 25), "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["k_bound"] == 5 and data["w_degree"] == 2


def test_verify_radical_agreement(capsys):
    code, out, _ = run(capsys, "verify", "radical-agreement")
    assert code == 0 and "0 fail" in out


def test_verify_json_and_text_have_same_verdicts(capsys):
    _, text, _ = run(capsys, "verify", "size-bounds", "--no-timing")
    _, js, _ = run(capsys, "verify", "size-bounds", "--no-timing", "--format", "json")
    data = json.loads(js)
    from_json = {(c["id"], c["verdict"]) for c in data["cases"]}
    from_text = {(m.group(2), m.group(1).lower())
                 for m in re.finditer(r"^  (PASS|FAIL|SKIP) (\S+)", text, re.M)}
    assert from_json == from_text and from_json
    assert set(data) == {"suite", "cases", "summary"}


def test_verify_is_byte_identical(capsys, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for p in (a, b):
        code, _, _ = run(capsys, "verify", "orbits", "--no-timing", "--format", "json",
                         "--seed", "5", "--out", str(p))
        assert code == 0
    assert a.read_bytes() == b.read_bytes()


def test_invalid_inputs_exit_2(capsys, tmp_path):
    bad = tmp_path / "bad.ring"
    bad.write_text("moduli 2 x\n")
    code, _, err = run(capsys, "nil", str(bad))
    assert code == 2 and "line 1, column 10" in err
    na = tmp_path / "na.ring"
    na.write_text("moduli 2 2\nmul 0 0 : 0 1\nmul 0 1 : 1 0\n")
    code, _, err = run(capsys, "nil", str(na))
    assert code == 2 and "not associative" in err
    code, _, _ = run(capsys, "nil", str(tmp_path / "missing.ring"))
    assert code == 2
    code, _, _ = run(capsys, "frobnicate")
    assert code == 2
    code, _, _ = run(capsys, "bounds", "-m", "1", "-s", "4")
    assert code == 2


@pytest.mark.skipif(shutil.which("finring") is None, reason="console script not installed")
def test_console_script():
    p = subprocess.run(["finring", "decompose", ring("z6")], capture_output=True, text=True)
    assert p.returncode == 0 and p.stdout == "[(1,2)^1, (1,3)^1]\n"


def test_module_entry_point():
    p = subprocess.run([sys.executable, "-m", "finring.cli", "bounds", "-m", "3", "-s", "1"],
                       capture_output=True, text=True)
    assert p.returncode == 0 and "k_bound: 4" in p.stdout
