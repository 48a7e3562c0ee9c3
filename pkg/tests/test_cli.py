import io
import json
import subprocess
import sys

import pytest

from binpart.cli import run


def call(*argv):
    out = io.StringIO()
    code = run(list(argv), out)
    return code, out.getvalue()


def records(text):
    return [json.loads(line) for line in text.splitlines()]


def test_period():
    code, out = call("period", "--poly", "1+x+x^4+x^9")
    rec = records(out)[0]
    assert code == 0
    assert rec["period"] == 84 and rec["m_bound"] == 84
    assert rec["factors"] == [
        {"poly": "1+x", "exp": 4},
        {"poly": "1+x+x^2", "exp": 1},
        {"poly": "1+x^2+x^3", "exp": 1},
    ]
    assert rec["input"] == {"command": "period", "poly": "1+x+x^4+x^9", "seed": 0}


def test_factor_accepts_hex():
    _, a = call("factor", "--poly", "0x213")
    _, b = call("factor", "--poly", "1+x+x^4+x^9")
    assert records(a)[0]["factors"] == records(b)[0]["factors"]


def test_complement():
    code, out = call("complement", "--set", "0,2,3")
    rec = records(out)[0]
    assert code == 0
    assert rec["T"] == 7 and rec["complement"] == [0, 2, 3, 4]
    rec = records(call("complement", "--set", "0,1,4,9")[1])[0]
    assert rec["density"] == "41/84" and rec["size"] == 41


def test_count():
    code, out = call("count", "--set", "0,1,2,3", "--base", "2", "--n", "7")
    rec = records(out)[0]
    assert code == 0
    assert (rec["n"], rec["value"]) == (7, "4")
    rec = records(call("count", "--set", "0|mod=1,res=0|from=1", "--n", "10000", "--mod", "8")[1])[0]
    assert rec["value"] == str(int(records(call("count", "--set", "0|mod=1,res=0|from=1", "--n", "10000")[1])[0]["value"]) % 8)


def test_big_values_are_strings():
    rec = records(call("count", "--set", "0|mod=1,res=0|from=1", "--n", "100000")[1])[0]
    assert isinstance(rec["value"], str) and int(rec["value"]).bit_length() > 64


def test_seq_streams_one_line_per_n():
    code, out = call("seq", "--set", "0,1,2", "--from", "3", "--to", "8")
    assert code == 0
    rows = records(out)
    assert [r["n"] for r in rows] == list(range(3, 9))
    assert [r["value"] for r in rows] == ["1", "3", "2", "3", "1", "4"]


def test_seq_tsv():
    code, out = call("seq", "--set", "0,1", "--to", "2", "--format", "tsv")
    lines = out.splitlines()
    assert code == 0
    assert lines[0].split("\t") == ["input", "n", "value", "mod"]
    assert [line.split("\t")[1:3] for line in lines[1:]] == [["0", "1"], ["1", "1"], ["2", "1"]]


def test_verify_exit_codes():
    code, out = call("verify", "--set", "0,1,4,9", "--truncation", "500")
    assert code == 0 and records(out)[0]["verified"] is True
    code, out = call("verify", "--set", "0,1,2", "--prime", "3", "--truncation", "200")
    assert code == 0
    code, out = call("verify-prime", "--set", "0,1", "--prime", "5")
    assert code == 0
    code, _ = call("verify-prime", "--set", "0,1", "--prime", "4")
    assert code == 65


def test_search_exit_codes():
    code, out = call("search", "--set", "0,1,2", "--mod", "2")
    rec = records(out)[0]
    assert code == 0 and (rec["N"], rec["T"]) == (0, 3)
    code, out = call("search", "--set", "0,1", "--base", "3", "--mod", "2", "--max-transient", "100", "--max-period", "100")
    rec = records(out)[0]
    assert code == 2 and rec["found"] is False and rec["max_period"] == 100


def test_stern():
    assert records(call("stern", "--n", "19")[1])[0]["value"] == "7"
    rows = records(call("stern", "--from", "0", "--to", "5")[1])
    assert [r["value"] for r in rows] == ["0", "1", "1", "2", "1", "3"]
    assert call("stern", "--n", "3", "--to", "5")[0] == 64
    assert call("stern")[0] == 64


def test_churchhouse():
    code, out = call("churchhouse", "--n", "1024")
    rec = records(out)[0]
    assert code == 0 and rec["ok"]
    assert rec["matching_readings"] == ["difference-valuation, floor((3v+4)/2)"]


def test_paper_check_single():
    code, out = call("paper-check", "--only", "stern-parity")
    assert code == 0 and records(out)[0]["pass"] is True
    code, out = call("paper-check", "--only", "density-counterexample")
    rec = records(out)[0]
    assert code == 0 and "18 > 17" in rec["detail"]


def test_paper_check_full():
    code, out = call("paper-check")
    rows = records(out)
    assert code == 0
    assert len(rows) >= 20 and all(r["pass"] for r in rows)


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["bogus"],
        ["count", "--set", "0,1"],
        ["count", "--set", "1,2", "--n", "3"],
        ["count", "--set", "0,1", "--n", "-1"],
        ["count", "--set", "0,1", "--n", "3", "--base", "1"],
        ["count", "--set", "0,1", "--n", "3", "--unknown"],
        ["factor", "--poly", "1+y"],
        ["seq", "--set", "0,1", "--from", "5", "--to", "2"],
        ["paper-check", "--only", "no-such-fixture"],
        ["count", "--set", "0,1", "--n", "3", "--format", "xml"],
    ],
)
def test_usage_errors(argv):
    assert call(*argv)[0] == 64


@pytest.mark.parametrize(
    "argv",
    [
        ["complement", "--set", "0"],
        ["complement", "--set", "0|mod=2,res=1|from=1"],
        ["factor", "--poly", "x+x^2"],
        ["factor", "--poly", "1"],
    ],
)
def test_computation_errors(argv):
    assert call(*argv)[0] == 65


def test_deterministic():
    argv = ["factor", "--poly", "1+x+x^3+x^17+x^40", "--seed", "3"]
    assert call(*argv) == call(*argv)


def test_entry_point_subprocess():
    proc = subprocess.run(
        [sys.executable, "-m", "binpart", "complement", "--set", "0,1,3"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["complement"] == [0, 1, 2, 4]
    proc = subprocess.run([sys.executable, "-m", "binpart", "count", "--set", "1"], capture_output=True, text=True)
    assert proc.returncode == 64 and proc.stdout == "" and "error" in proc.stderr
