import json

import pytest

from maxlin.errors import ParseError
from maxlin.formats import (
    parse_dimacs,
    parse_lin,
    parse_result,
    serialize_dimacs,
    serialize_lin,
    serialize_result,
)
from maxlin.fpt_solver import decide
from maxlin.gf2_core import LinearSystem
from maxlin.instance_gen import CnfGenConfig, LinGenConfig, gen_cnf, gen_lin
from maxlin.sat_bridge import CnfFormula

S = LinearSystem.build


def test_parse_lin_examples():
    assert parse_lin("p lin 2 1\n3 0 1 2 0\n") == S(2, [([0, 1], 0, 3)])
    assert parse_lin("c note\np lin 1 1\n1 1 1 0\n") == S(1, [([0], 1, 1)])


@pytest.mark.parametrize("text, code, line", [
    ("p lin 1 1\n0 0 1 0\n", "weight", 2),
    ("p lin 1 1\n-2 0 1 0\n", "weight", 2),
    ("p lin 1 1\n1 2 1 0\n", "rhs", 2),
    ("p lin 2 1\n1 0 3 0\n", "index", 2),
    ("p lin 2 1\n1 0 1 1 0\n", "duplicate", 2),
    ("p lin 2 1\n1 0 1 2\n", "terminator", 2),
    ("p lin 2 1\n1 0 0\n", "empty", 2),
    ("p lin 2\n1 0 1 0\n", "header", 1),
    ("p cnf 2 1\n1 0 1 0\n", "header", 1),
    ("1 0 1 0\n", "header", 1),
    ("p lin 2 2\n1 0 1 0\n", "count", None),
    ("p lin 2 1\nx 0 1 0\n", "weight", 2),
])
def test_parse_lin_diagnostics(text, code, line):
    with pytest.raises(ParseError) as info:
        parse_lin(text)
    assert info.value.code == code
    assert info.value.line == line


def test_lin_round_trip():
    for seed in range(100):
        system = gen_lin(LinGenConfig(1 + seed % 9, 1 + seed % 11, 1 + seed % 3 % (1 + seed % 9), 9, seed))
        text = serialize_lin(system, ["generated"])
        assert parse_lin(text) == system
        assert serialize_lin(parse_lin(text), ["generated"]) == text


def test_parse_dimacs_examples():
    assert parse_dimacs("p cnf 2 1\n1 2 0\n") == CnfFormula(2, ((1, 2),), 2)
    f = parse_dimacs("p cnf 2 2\n1 2 0\n-1 2 0\n")
    assert f.clauses == ((1, 2), (-1, 2)) and f.r == 2
    # clauses may span lines
    assert parse_dimacs("c x\np cnf 3 1\n1 -2\n 3 0\n").clauses == ((1, -2, 3),)


@pytest.mark.parametrize("text, code", [
    ("p cnf 2 1\n1 -1 0\n", "tautology"),
    ("p cnf 2 1\n1 1 0\n", "duplicate"),
    ("p cnf 3 2\n1 2 0\n1 2 3 0\n", "width"),
    ("p cnf 2 1\n1 0\n", "width"),
    ("p cnf 2 1\n1 3 0\n", "index"),
    ("p cnf 2 1\n1 2\n", "terminator"),
    ("p cnf 2 2\n1 2 0\n", "count"),
])
def test_parse_dimacs_diagnostics(text, code):
    with pytest.raises(ParseError) as info:
        parse_dimacs(text)
    assert info.value.code == code


def test_dimacs_round_trip():
    for seed in range(50):
        f = gen_cnf(CnfGenConfig(5, 1 + seed % 8, 2 + seed % 2, seed))
        assert parse_dimacs(serialize_dimacs(f)) == f


def test_result_documents():
    yes = decide(S(2, [([0, 1], 1, 7)]), 3)
    doc = json.loads(serialize_result(yes))
    assert list(doc) == [
        "answer", "k", "excess2_optimum", "certificate_excess2", "witness",
        "strategy", "marks", "equations_deleted", "residual_size", "elapsed_s",
    ]
    assert doc["answer"] == "yes" and len(doc["witness"]) == 2
    no = decide(S(1, [([0], 0, 1), ([0], 1, 1)]), 1)
    doc = json.loads(serialize_result(no))
    assert doc["answer"] == "no" and doc["certificate_excess2"] == 0 and doc["witness"] is None
    text = serialize_result(no, "text")
    assert text.startswith("s NO\n") and "certificate_excess2 0" in text
    for v in (yes, no):
        assert parse_result(serialize_result(v)) == v


def test_result_round_trip_many():
    for seed in range(60):
        system = gen_lin(LinGenConfig(6, 8, 3, 4, seed))
        for k in (0, 2, 5, 9):
            v = decide(system, k)
            assert parse_result(serialize_result(v)) == v


def test_parse_result_rejects_garbage():
    with pytest.raises(ParseError):
        parse_result('{"answer": "yes"}')
