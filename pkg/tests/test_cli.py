import csv
import io
import json
import subprocess
import sys

import pytest

from maxlin.cli import run_cli
from maxlin.formats import parse_lin, serialize_lin
from maxlin.gf2_core import LinearSystem, evaluate
from maxlin.instance_gen import LinGenConfig, gen_lin


@pytest.fixture
def write(tmp_path):
    def _write(name, text):
        path = tmp_path / name
        path.write_text(text)
        return str(path)
    return _write


def test_solve_exit_codes(write, capsys):
    any_lin = write("any.lin", "p lin 2 2\n3 0 1 2 0\n1 1 2 0\n")
    assert run_cli(["solve", "--k", "0", any_lin]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["answer"] == "yes"

    pair = write("pair.lin", "p lin 1 2\n1 0 1 0\n1 1 1 0\n")
    assert run_cli(["solve", "--k", "1", pair]) == 1
    doc = json.loads(capsys.readouterr().out)
    assert doc["answer"] == "no" and doc["certificate_excess2"] == 0


def test_solve_text_and_strategies(write, capsys):
    path = write("s.lin", "p lin 3 3\n2 0 1 2 0\n1 0 2 3 0\n1 1 1 3 0\n")
    for strategy in ("auto", "theorem1", "theorem2", "brute"):
        assert run_cli(["solve", "--k", "2", "--strategy", strategy, "--format", "text", path]) == 0
        assert capsys.readouterr().out.startswith("s YES")


def test_usage_and_parse_errors(write, capsys):
    bad = write("bad.lin", "p lin 1 1\n0 0 1 0\n")
    assert run_cli(["solve", "--k", "1", bad]) == 2
    assert "nonpositive weight" in capsys.readouterr().err
    assert run_cli(["solve", bad]) == 2
    assert run_cli(["frobnicate"]) == 2
    assert run_cli(["solve", "--k", "1", "/nonexistent.lin"]) == 2
    assert run_cli(["solve", "--k", "-1", bad]) == 2
    assert run_cli(["satsolve", "--k", "1", write("t.cnf", "p cnf 2 1\n1 -1 0\n")]) == 2


def test_budget_exit_code(write, capsys):
    system = gen_lin(LinGenConfig(12, 60, 3, 1, 1))
    path = write("big.lin", serialize_lin(system))
    assert run_cli(["solve", "--k", "50", "--strategy", "brute", "--budget", "4", path]) == 3
    assert "budget" in capsys.readouterr().err


def test_reduce(write, capsys):
    path = write("r.lin", "p lin 3 2\n1 0 1 2 0\n2 1 1 2 0\n")
    assert run_cli(["reduce", path]) == 0
    out = capsys.readouterr().out
    assert out.splitlines()[0] == "c kept_vars 1"
    assert parse_lin(out) == LinearSystem.build(1, [([0], 1, 1)])


def test_sat2lin_matches_bridge(write, capsys):
    path = write("one.cnf", "p cnf 2 1\n1 2 0\n")
    assert run_cli(["sat2lin", path]) == 0
    out = capsys.readouterr().out
    assert parse_lin(out) == LinearSystem.build(2, [([0], 1, 1), ([1], 1, 1), ([0, 1], 1, 1)])
    assert "p lin 2 3" in out


def test_satsolve(write, capsys):
    path = write("one.cnf", "p cnf 2 1\n1 2 0\n")
    assert run_cli(["satsolve", "--k", "1", path]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["witness"] in ("01", "10", "11")
    assert run_cli(["satsolve", "--k", "2", path]) == 1


def test_gen(capsys):
    assert run_cli(["gen", "lin", "--n", "5", "--m", "7", "--r", "3", "--seed", "4", "--wmax", "3"]) == 0
    first = capsys.readouterr().out
    assert parse_lin(first) == gen_lin(LinGenConfig(5, 7, 3, 3, 4))
    run_cli(["gen", "lin", "--n", "5", "--m", "7", "--r", "3", "--seed", "4", "--wmax", "3"])
    assert capsys.readouterr().out == first
    assert run_cli(["gen", "cnf", "--n", "5", "--m", "4", "--r", "3", "--seed", "2"]) == 0
    assert "p cnf 5 4" in capsys.readouterr().out
    assert run_cli(["gen", "lin", "--n", "2", "--m", "4", "--r", "3"]) == 2


def test_bench(write, capsys):
    spec = write("c.json", json.dumps({
        "n": [10], "m": [20], "r_max": [2], "k": [1, 2], "seeds": {"start": 0, "count": 3},
    }))
    assert run_cli(["bench", "--spec", spec]) == 0
    rows = list(csv.DictReader(io.StringIO(capsys.readouterr().out)))
    assert len(rows) == 3 * 2 * 2
    assert [int(r["seed"]) for r in rows] == sorted(int(r["seed"]) for r in rows)
    for row in rows:
        if row["lemma4"] == "1" or row["theorem2"] == "1":
            assert row["reached_k"] == "1"
    assert run_cli(["bench", "--spec", write("bad.json", '{"bogus": 1}')]) == 2


def test_bench_parallel_matches_serial(write, capsys):
    base = {"n": [8, 12], "m": [16], "r_max": [3], "k": [1, 3], "seeds": [5, 1, 3]}
    run_cli(["bench", "--spec", write("a.json", json.dumps(base))])
    serial = capsys.readouterr().out
    run_cli(["bench", "--spec", write("b.json", json.dumps({**base, "workers": 2}))])
    assert capsys.readouterr().out == serial


def test_module_entry_point(write):
    path = write("w.lin", "p lin 2 1\n7 1 1 2 0\n")
    proc = subprocess.run([sys.executable, "-m", "maxlin", "solve", "--k", "7", path],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    doc = json.loads(proc.stdout)
    witness = tuple(int(c) for c in doc["witness"])
    assert evaluate(parse_lin(open(path).read()), witness)[1] >= 7
