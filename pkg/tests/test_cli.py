import json
import subprocess
import sys

import pytest

from charvar.cli import BUDGET, FALSE, OK, USAGE, main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--format", "json")
    return code, json.loads(out)


def test_certify_example(capsys):
    code, data = run_json(capsys, "certify", "fixtures/deleted-b3.json", "fixtures/coset-C.json", "--d", "1")
    assert code == OK
    assert data["holds"] and data["rank"] == 5 and data["generic_depth"] == 1


def test_certify_false_and_modp(capsys):
    code, data = run_json(capsys, "certify", "deleted-b3", "--coset", "coset-C", "--d", "2")
    assert code == FALSE and not data["holds"]
    code, data = run_json(capsys, "certify", "deleted-b3", "coset-C", "--method", "modp", "--trials", "3")
    assert code == OK and data["rank"] == 5


def test_resonance_example(capsys):
    code, data = run_json(capsys, "resonance", "fixtures/falk-f2.json", "--d", "1")
    assert code == OK and data["count"] == 11


def test_depth_example(capsys):
    code, data = run_json(capsys, "depth", "fixtures/non-fano.json", "--char", "0,1/2,1/2,0,1/2,1/2,0")
    assert code == OK and data["depth"] == 2
    code, out, _ = run(capsys, "depth", "non-fano", "--char", "0,1/2,1/2,0,1/2,1/2,0")
    assert out.strip().endswith("2")


def test_poset_and_intersect(capsys):
    code, data = run_json(capsys, "poset", "a3")
    assert code == OK and data["census"] == {"2": 3, "3": 4}
    code, data = run_json(capsys, "intersect", "coset-C", "coset-C")
    assert code == OK and data["count"] == 1


@pytest.mark.parametrize("cmd", ["wiring", "present", "alexmat"])
def test_wiring_data_commands(capsys, cmd):
    code, out, _ = run(capsys, cmd, "deleted-b3")
    assert code == OK and out.strip()
    code, out, _ = run(capsys, cmd, "deleted-b3", "--fibered")
    assert code == OK and out.strip()


def test_alexmat_block(capsys):
    code, out, _ = run(capsys, "alexmat", "deleted-b3", "--block", "--format", "json")
    assert code == OK
    assert json.loads(out)["rows"] == 12


def test_scan_and_report(capsys):
    code, data = run_json(capsys, "scan", "a3", "--orders", "2", "--on", "coset-a3-Pi", "--d", "2")
    # only the identity survives
    assert code == OK and data["characters"] == [["0"] * 6]
    code, data = run_json(capsys, "scan", "a3", "--gen", "1/2,1/2,0,0,0,0", "--d", "1")
    assert code == OK and data["count"] == 2
    code, data = run_json(capsys, "report", "deleted-b3", "--search")
    assert code == OK and data["totals"]["components"] == 13


def test_usage_errors(capsys):
    code, out, err = run(capsys, "depth", "non-fano", "--char", "1/2,x")
    assert code == USAGE and "charvar:" in err
    code, data = run_json(capsys, "depth", "non-fano", "--char", "1/2,0,0,0,0,0,0")
    assert code == USAGE and data["exit"] == USAGE
    code, _, _ = run(capsys, "depth", "no-such-file.json", "--char", "0")
    assert code == USAGE
    code, _, _ = run(capsys, "frobnicate")
    assert code == USAGE
    code, _, _ = run(capsys, "certify", "deleted-b3")
    assert code == USAGE


def test_budget_exit(capsys):
    code, data = run_json(capsys, "resonance", "grunbaum", "--budget", "10")
    assert code == BUDGET and data["error"] == "budget"


def test_output_does_not_depend_on_thread_count(capsys):
    outs = []
    for threads in ("1", "2"):
        code, out, _ = run(capsys, "search-translated", "deleted-b3", "--threads", threads, "--format", "json")
        assert code == OK
        outs.append(out)
    assert outs[0] == outs[1]


def test_thread_count_from_environment(capsys, monkeypatch):
    monkeypatch.setenv("CHARVAR_THREADS", "two")
    code, _, _ = run(capsys, "search-translated", "deleted-b3")
    assert code == USAGE


def test_console_script_entry():
    proc = subprocess.run([sys.executable, "-m", "charvar.cli", "depth", "non-fano",
                           "--char", "0,1/2,1/2,0,1/2,1/2,0"], capture_output=True, text=True)
    assert proc.returncode == 0


@pytest.mark.parametrize("example", ["a3", "nonfano", "deleted-b3"])
def test_reproduce(capsys, example):
    code, out, _ = run(capsys, "reproduce", example)
    assert code == OK
