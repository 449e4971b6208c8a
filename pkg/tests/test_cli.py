import json
import subprocess
import sys

import pytest

from caretf.cli import main
from caretf.treecalc import generator, pair_from_json, pair_to_json


def cli(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_decode_x0(capsys):
    code, out, _ = cli(capsys, "decode", "re,er")
    assert code == 0
    assert pair_from_json(out) == generator("x0")


def test_decode_identity(capsys):
    code, out, _ = cli(capsys, "decode", "r,r")
    assert code == 0
    assert json.loads(out) == {"domain": {"left": None, "right": None},
                               "range": {"left": None, "right": None}}


def test_unreduced_needs_flag(capsys):
    w = "eea()(ab)raee,eea()(ab)raee"
    code, _, err = cli(capsys, "decode", w)
    assert code == 1 and "unreduced" in err
    code, out, _ = cli(capsys, "decode", "--unreduced", w)
    assert code == 0
    code, back, _ = cli(capsys, "encode", out)
    assert code == 0 and back.strip() == w


@pytest.mark.parametrize("bad, where", [("rx,re", "position 1"), ("ra,er", "condition (2)"),
                                        ("r,re", "length"), ("re", "TOP,BOTTOM")])
def test_decode_errors_are_located(capsys, bad, where):
    code, _, err = cli(capsys, "decode", bad)
    assert code == 2 and where in err


def test_encode_from_stdin(capsys, monkeypatch):
    import io
    monkeypatch.setattr(sys, "stdin", io.StringIO(pair_to_json(generator("x1"))))
    code, out, _ = cli(capsys, "encode", "-")
    assert code == 0 and out.strip() == "ree,rae"
    code, _, err = cli(capsys, "encode", "{not json")
    assert code == 2


@pytest.mark.parametrize("pair, code, verdict", [
    ("ree,rae", 0, "ACCEPT"), ("er,er", 1, "REJECT"), ("rr,rr", 1, "REJECT"),
])
def test_accept(capsys, pair, code, verdict):
    got, out, _ = cli(capsys, "accept", pair)
    assert got == code and out.startswith(verdict)


def test_accept_trace_and_json(capsys):
    code, out, _ = cli(capsys, "accept", "--trace", "re,er")
    lines = out.strip().splitlines()
    assert code == 0 and len(lines) == 4 and lines[0].strip().startswith("start")
    code, out, _ = cli(capsys, "accept", "--json", "--trace", "re,er")
    obj = json.loads(out)
    assert obj["accepted"] and obj["trace"][-1]["counters"] == [0, 0]


@pytest.mark.parametrize("word, result", [
    (["x0"], "re,er"), (["x1", "x1^-1"], "r,r"), (["x1"], "ree,rae"), (["x0inv", "x0"], "r,r"),
])
def test_mult(capsys, word, result):
    code, out, _ = cli(capsys, "mult", "r,r", *word)
    assert code == 0 and out.strip() == result


def test_mult_bad_generator(capsys):
    code, _, err = cli(capsys, "mult", "r,r", "x7")
    assert code == 2 and "x7" in err


@pytest.mark.parametrize("s, u, v, code", [
    ("x0", "r,r", "re,er", 0), ("x1", "r,r", "ree,rae", 0), ("x1", "r,r", "re,er", 1),
])
def test_check_mult(capsys, s, u, v, code):
    assert cli(capsys, "check-mult", "-s", s, u, v)[0] == code


def test_ball(capsys):
    code, out, _ = cli(capsys, "ball", "0")
    assert code == 0 and out.split() == ["r,r", "0"]
    code, out, _ = cli(capsys, "ball", "1", "--json")
    entries = json.loads(out)
    assert len(entries) == 5 and {"pair": "re,er", "length": 1} in entries
    assert cli(capsys, "ball", "-1")[0] == 2


def test_quasigeodesic(capsys):
    code, out, _ = cli(capsys, "quasigeodesic", "3", "--json")
    assert code == 0 and json.loads(out)["D"] == "3/2"


def test_export_dot_case5b(capsys):
    code, out, _ = cli(capsys, "export-dot", "case5b")
    assert code == 0
    for i in range(6):
        assert f'"q{i}"' in out
    assert cli(capsys, "export-dot", "nothing")[0] == 2


def test_export_dot_limit(capsys):
    code, _, err = cli(capsys, "export-dot", "l_x1", "--limit", "10")
    assert code == 2 and "--limit" in err


def test_verify_small_run(capsys, tmp_path):
    path = tmp_path / "report.json"
    code, out, _ = cli(capsys, "verify", "--max-carets", "3", "--radius", "2", "--samples", "20",
                       "--no-audit", "--json", str(path))
    report = json.loads(path.read_text())
    names = {c["name"] for c in report["checks"]}
    assert "acceptor/biconditional" in names and "multiplier/x1/near_miss" in names
    assert code == (0 if report["passed"] else 1)
    assert ("ALL PASSED" in out) == report["passed"]


def test_output_is_deterministic(capsys):
    first = cli(capsys, "ball", "2")
    assert cli(capsys, "ball", "2") == first


def test_usage_errors(capsys):
    assert cli(capsys)[0] == 2
    assert cli(capsys, "--help")[0] == 0


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "caretf", "accept", "re,er"],
                         capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout.strip() == "ACCEPT"
