import json
import subprocess
import sys

import pytest

from kerbinom.cli import main


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr().out.strip().splitlines()
    return code, [json.loads(line) for line in out]


def test_kernel_command(capsys):
    code, rows = run(["kernel", "--q", "2", "--n", "2", "--s", "1", "--a", "1", "--b", "1"], capsys)
    assert code == 0
    assert rows[0]["dim"] in (0, 1) and rows[0]["bound_ok"]
    assert rows[-1]["summary"] and rows[-1]["ok"]
    code, rows = run(["kernel", "--q", "2", "--n", "2", "--a", "0", "--b", "0"], capsys)
    assert rows[0]["dim"] == 0


def test_witness_roundtrip_to_kernel(capsys):
    code, rows = run(["witness", "--q", "2", "--n", "5", "--s", "1", "--delta", "t^3"], capsys)
    assert code == 0
    cert = rows[0]
    assert cert["delta"] == 8 and cert["verified"] and cert["dim"] == 2
    b_code, b_rows = run(["kernel", "--q", "2", "--n", "5", "--s", "1", "--a", str(cert["a"]), "--b", str(_mul(cert["delta"], cert["a"]))], capsys)
    assert b_rows[0]["dim"] == 2


def _mul(x, y):
    from kerbinom.gf import tower_field

    return tower_field(2, 5).mul(x, y)


def test_exit_codes(capsys):
    code, rows = run(["witness", "--q", "2", "--n", "5", "--delta", "1"], capsys)
    assert code == 2 and rows[-1]["error"] == "input"
    code, rows = run(["kernel", "--q", "6", "--n", "2"], capsys)
    assert code == 2
    code, rows = run(["witness", "--q", "2", "--n", "11", "--delta", "3"], capsys)
    assert code == 3 and rows[-1]["error"] == "size"
    code, rows = run(["kernel", "--q", "2", "--n", "17"], capsys)
    assert code == 3
    code, rows = run(["kernel", "--q", "2", "--n", "5", "--s", "5"], capsys)
    assert code == 2


def test_per_class(capsys):
    code, rows = run(["witness", "--q", "3", "--n", "5", "--per-class"], capsys)
    assert code == 0
    assert rows[-1]["rows"] == 241 and rows[-1]["status"] == {"OK": 241}


def test_threads_match_serial(capsys, tmp_path):
    a, b = tmp_path / "a.jsonl", tmp_path / "b.jsonl"
    main(["classify", "--q", "2", "--n", "3", "--s", "2", "--exhaustive", "--out", str(a)])
    main(["classify", "--q", "2", "--n", "3", "--s", "2", "--exhaustive", "--threads", "3", "--out", str(b)])
    assert a.read_bytes() == b.read_bytes()
    rows = [json.loads(x) for x in a.read_text().splitlines()]
    assert rows[-1]["ok"] and rows[-1]["inconsistent"] == 0
    assert {r["kind"] for r in rows[:-1]} <= {"CRITERION_N3", "NOT_SCATTERED"}


def test_classify_special_rows(capsys):
    code, rows = run(["classify", "--q", "3", "--n", "4", "--s", "1"], capsys)
    assert sum(r.get("kind") == "SPECIAL_N4" for r in rows) == 2


def test_curve_commands(capsys):
    from kerbinom.gf import tower_field

    eta = tower_field(3, 3).pick_nonsquare()
    code, rows = run(["curve", "--q", "3", "--n", "3", "--beta", "0", "--eta", str(eta), "--verify-points"], capsys)
    assert code == 0
    assert rows[0]["ok"] and rows[0]["roundtrip_ok"]
    code, rows = run(["curve", "--q", "3", "--n", "3", "--beta", "0", "--eta", "t"], capsys)
    assert code == 2
    code, rows = run(["curve-sweep", "--q", "2", "--n", "3", "--verify-points"], capsys)
    assert code == 0 and rows[-1]["failures"] == 0
    code, rows = run(["curve", "--q", "2", "--n", "3", "--beta", "1", "--eps", "1"], capsys)
    assert code == 2


def test_mrd_command(capsys):
    code, rows = run(["mrd", "--q", "2", "--n", "5", "--delta", "3"], capsys)
    rep = rows[0]
    assert code == 0
    assert rep["mrd"] is False and rep["params"][3] == 10 - rep["max_weight"]


def test_backend_flag(capsys):
    code, rows = run(["mrd", "--q", "2", "--n", "2", "--delta", "3", "--backend", "python"], capsys)
    from kerbinom import kernels

    kernels.use(kernels.available()[0] if "cython" not in kernels.available() else "cython")
    assert code == 0


def test_module_entry_point_deterministic():
    cmd = [sys.executable, "-m", "kerbinom", "witness", "--q", "2", "--n", "3", "--s", "1", "--all"]
    a = subprocess.run(cmd, capture_output=True, text=True)
    b = subprocess.run(cmd, capture_output=True, text=True)
    assert a.returncode == 0
    assert a.stdout == b.stdout
