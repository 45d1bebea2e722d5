import json
import subprocess
import sys

import pytest

from slab.campaign import FLOW_MATRIX_GOLDEN
from slab.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_flow_matrix_csv(capsys, tmp_path):
    code, out, _ = run(capsys, "flow-matrix", "eventually-010", "-n", "1", "--horizon", "200")
    assert code == 0 and out == FLOW_MATRIX_GOLDEN
    path = tmp_path / "m.csv"
    assert run(capsys, "flow-matrix", "periodic:2(010)", "-n", "1", "--csv", str(path))[0] == 0
    assert path.read_text() == FLOW_MATRIX_GOLDEN


def test_generate_and_file_round_trip(capsys, tmp_path):
    path = tmp_path / "fib.txt"
    assert run(capsys, "generate", "fibonacci", "-n", "13", "--file", "-o", str(path))[0] == 0
    assert path.read_text() == "alphabet: 12\n1211212112112\n"
    code, out, _ = run(capsys, "generate", f"file:{path}", "-n", "100")
    assert code == 0 and out == "1211212112112\n"


def test_complexity_and_morse_hedlund(capsys):
    code, out, _ = run(capsys, "complexity", "fibonacci", "--n-max", "6")
    assert code == 0 and out.split() == [str(n + 1) for n in range(7)]
    code, out, _ = run(capsys, "complexity", "eventually-010", "--n-max", "4", "--morse-hedlund", "--horizon", "300")
    assert "eventually-periodic(n0=2)" in out
    code, out, _ = run(capsys, "complexity", "fibonacci", "--n-max", "3", "--json")
    assert json.loads(out)["profile"] == [1, 2, 3, 4]


def test_unsaturated_caveat_goes_to_stderr(capsys):
    code, out, err = run(capsys, "complexity", "fibonacci", "--n-max", "30", "--horizon", "40")
    assert code == 0 and "unsaturated" in err


def test_cf(capsys):
    assert run(capsys, "cf", "17/6")[1] == "[2;1,5] terminated\n"
    code, out, _ = run(capsys, "cf", "sqrt(2)", "--convergents", "4")
    assert out.splitlines() == ["[1;period(2)] periodic", "1 3/2 7/5 17/12"]
    code, out, _ = run(capsys, "cf", "1/2+1/2*sqrt(5)", "--json")
    assert json.loads(out) == {"preperiod": [], "period": [1], "terminated": False}


def test_renormalize(capsys):
    code, out, _ = run(capsys, "renormalize", "fibonacci", "--run-lengths", "5")
    assert code == 0 and out == "1,1,1,1,1\n"
    code, out, _ = run(capsys, "renormalize", "fibonacci", "-n", "8")
    assert out == "21221212\n"
    code, out, err = run(capsys, "renormalize", "period-12", "--run-lengths", "3", "--horizon", "512")
    assert code == 1 and "caveat" in err


def test_graph_commands(capsys, tmp_path):
    code, out, _ = run(capsys, "rauzy", "fibonacci", "-n", "3", "--dot", str(tmp_path / "g.dot"))
    assert code == 0 and "vertices=4 edges=5" in out
    assert (tmp_path / "g.dot").read_text().startswith("digraph rauzy_3")
    code, out, _ = run(capsys, "ext-graph", "period-1122", "-u", "")
    assert code == 0 and out.strip().endswith("cyclic")
    code, out, err = run(capsys, "ext-graph", "fibonacci", "-u", "22")
    assert code == 1 and "not a factor" in err


def test_kernel_and_dendric(capsys):
    code, out, _ = run(capsys, "kernel", "fibonacci", "-n", "3", "--side", "left")
    k = json.loads(out)
    assert k["dimension"] == 1 and set(k["basis"][0]) == {"1/1"}
    assert run(capsys, "dendric", "fibonacci", "--max-n", "8")[0] == 0
    code, out, _ = run(capsys, "dendric", "period-1122", "--max-n", "3")
    assert code == 1 and out.startswith("fails-at(ε) cyclic")


def test_tijdeman_audit(capsys):
    code, out, _ = run(capsys, "tijdeman-audit", "fibonacci", "--exact-freq", "pre:[] period:[1]")
    assert code == 0 and "Delta=2 holds" in out
    code, out, _ = run(capsys, "tijdeman-audit", "quasi-sturmian-31-32", "--claimed-delta", "3", "--n-max", "8")
    assert code == 1 and "hence Delta <= 2" in out


def test_code_subcommands(capsys, tmp_path):
    alpha = "3/2-1/2*sqrt(5)"
    fib = run(capsys, "code", "rotation", "--y", alpha, "--alpha", alpha, "-n", "40")[1]
    assert fib.startswith("1211212112112")
    theta = f"1/2*sqrt(5)-1/2,{alpha}"
    for kind in ("cutting", "billiard", "flow"):
        assert run(capsys, "code", kind, "--x", "0,0", "--theta", theta, "-n", "40")[1] == fib
    svg = tmp_path / "t.svg"
    assert run(capsys, "code", "billiard", "--x", "0,0", "--theta", theta, "-n", "10", "--svg", str(svg))[0] == 0
    assert svg.read_text().startswith("<?xml")
    code, _, err = run(capsys, "code", "cutting", "--x", "1/2,1/2", "--theta", "1,1", "-n", "5")
    assert code == 1
    code, _, err = run(capsys, "code", "cutting", "--x", "1/3,1/7", "--theta", "1,2", "-n", "5")
    assert code == 2 and "rational slope" in err
    assert run(capsys, "code", "rotation", "-n", "5")[0] == 2


def test_usage_errors(capsys, tmp_path):
    assert run(capsys, "complexity", "no-such-word")[0] == 2
    bad = tmp_path / "bad.txt"
    bad.write_text("alphabet: 12\n1213\n")
    assert run(capsys, "complexity", f"file:{bad}")[0] == 2
    assert run(capsys, "frobnicate")[0] == 2
    assert run(capsys, "campaign")[0] == 2


def test_campaign_command(capsys, tmp_path):
    cfg = tmp_path / "c.cfg"
    out_path = tmp_path / "report.json"
    cfg.write_text(f"word=fibonacci\ncheck=kernel\ncheck=dendric\nn_max=5\nhorizon=3000\noutput={out_path}\n")
    code, _, err = run(capsys, "campaign", str(cfg), "--no-timing")
    assert code == 0 and "PASS kernel" in err
    first = out_path.read_text()
    run(capsys, "campaign", str(cfg), "--no-timing")
    assert out_path.read_text() == first
    code, out, _ = run(capsys, "campaign", "--word", "period-1122", "--check", "dendric", "--n-max", "3",
                       "--horizon", "500", "--no-timing")
    assert code == 1 and json.loads(out)["passed"] is False


def test_builtins_listing(capsys):
    code, out, _ = run(capsys, "builtins")
    assert code == 0 and "fibonacci\t1211212112112" in out


def test_console_script_entry_point():
    r = subprocess.run([sys.executable, "-m", "slab.cli", "cf", "17/6"], capture_output=True, text=True)
    assert r.returncode == 0 and r.stdout == "[2;1,5] terminated\n"
