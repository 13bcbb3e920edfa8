import io
import json
import os
import subprocess
import sys

import pytest

from wmba.cli import main

FIX = os.path.join(os.path.dirname(__file__), os.pardir, "fixtures")
INTERVAL = os.path.join(FIX, "interval.gpd")


def run(argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(argv, out=out, err=err)
    return code, out.getvalue(), err.getvalue()


def test_verify_json():
    code, out, _ = run(["verify", INTERVAL, "--suite", "all", "--format", "json"])
    assert code == 0
    data = json.loads(out)
    assert data["ok"] and data["fixture"] == "interval" and data["dim"] == 4
    assert {s["suite"] for s in data["suites"]} >= {"axioms", "integrals", "hopf"}


def test_verify_text_single_suite():
    code, out, _ = run(["verify", INTERVAL, "--suite", "axioms"])
    assert code == 0
    assert out.splitlines()[-1] == "overall PASS"


def test_verify_gf():
    code, out, _ = run(["verify", INTERVAL, "--field", "gf:101", "--format", "json"])
    assert code == 0 and json.loads(out)["field"] == "gf:101"


def test_derive_antipode():
    code, out, _ = run(["derive", INTERVAL, "--emit", "S"])
    assert code == 0
    lines = out.splitlines()
    assert "S(f) = f'" in lines
    assert "S(f') = f" in lines
    assert "S(1_x) = 1_x" in lines


def test_derive_all_sections():
    code, out, _ = run(["derive", INTERVAL])
    assert code == 0
    for head in ("# T3", "# T4", "# PiL", "# R (dim 2)", "# L (dim 2)", "# S"):
        assert head in out


@pytest.mark.parametrize("argv", [
    ["verify", INTERVAL, "--bogus"],
    ["frobnicate"],
    [],
    ["verify", INTERVAL, "--suite", "nope"],
    ["derive", INTERVAL, "--emit", "T9"],
    ["verify", INTERVAL, "--field", "gf:4"],
    ["verify", os.path.join(FIX, "does-not-exist.gpd")],
])
def test_usage_errors(argv):
    code, out, err = run(argv)
    assert code == 2
    assert err.startswith("wmba")


def test_parse_error_exit(tmp_path):
    p = tmp_path / "bad.alg"
    p.write_text("[algebra] dim=1\nlabels e\nc e e e = 1/0\n")
    code, _, err = run(["verify", str(p)])
    assert code == 2 and "line 3" in err


def test_failing_structure_exits_one(tmp_path):
    text = open(os.path.join(FIX, "z2.alg")).read().replace("g1 -> = 1", "g1 -> = 2")
    p = tmp_path / "bad.alg"
    p.write_text(text)
    code, out, _ = run(["verify", str(p), "--suite", "axioms"])
    assert code == 1
    assert "FAIL" in out and out.splitlines()[-1] == "overall FAIL"


def test_report_deterministic(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert run(["report", INTERVAL, "-o", str(a)])[0] == 0
    assert run(["report", INTERVAL, "-o", str(b)])[0] == 0
    assert a.read_bytes() == b.read_bytes()


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "wmba.cli", "derive", INTERVAL, "--emit", "S"],
                       capture_output=True, text=True)
    assert r.returncode == 0 and "S(f) = f'" in r.stdout
