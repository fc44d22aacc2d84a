"""Text formats: ``.lin`` systems, DIMACS CNF and verdict documents.

``.lin`` follows DIMACS habits::

    c optional comment lines
    p lin <n> <m>
    <weight> <rhs> <v1> ... <vr> 0

Variables are 1-based in files and 0-based in memory.
"""

from __future__ import annotations

import json
from typing import Iterable

from .errors import ContractError, ParseError, WeightOverflowError
from .fpt_solver import Stats, Verdict
from .gf2_core import WEIGHT_MAX, LinearSystem, WeightedEquation
from .sat_bridge import CnfFormula


def _int(tok: str, lineno: int, what: str, code: str) -> int:
    try:
        return int(tok)
    except ValueError:
        raise ParseError(f"{what} {tok!r} is not an integer", lineno, code) from None


def _content_lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        yield lineno, line


def _header(line: str, lineno: int, kind: str) -> tuple[int, int]:
    toks = line.split()
    if len(toks) != 4 or toks[0] != "p" or toks[1] != kind:
        raise ParseError(f"expected 'p {kind} <n> <m>', got {line!r}", lineno, "header")
    n = _int(toks[2], lineno, "variable count", "header")
    m = _int(toks[3], lineno, "equation count" if kind == "lin" else "clause count", "header")
    if n < 0 or m < 0:
        raise ParseError("negative count in header", lineno, "header")
    return n, m


def parse_lin(text: str) -> LinearSystem:
    header = None
    eqs = []
    for lineno, line in _content_lines(text):
        if line.startswith("p"):
            if header is not None:
                raise ParseError("second header line", lineno, "header")
            header = _header(line, lineno, "lin")
            continue
        if header is None:
            raise ParseError("equation before the 'p lin' header", lineno, "header")
        n = header[0]
        toks = line.split()
        if len(toks) < 2:
            raise ParseError("equation needs a weight and a right-hand side", lineno, "syntax")
        weight = _int(toks[0], lineno, "weight", "weight")
        if weight <= 0:
            raise ParseError(f"nonpositive weight {weight}", lineno, "weight")
        if weight > WEIGHT_MAX:
            raise ParseError(f"weight {weight} exceeds 64 bits", lineno, "weight")
        rhs = _int(toks[1], lineno, "right-hand side", "rhs")
        if rhs not in (0, 1):
            raise ParseError(f"right-hand side {rhs} is not 0 or 1", lineno, "rhs")
        rest = toks[2:]
        if not rest or rest[-1] != "0":
            raise ParseError("variable list is not terminated by 0", lineno, "terminator")
        lhs = 0
        for tok in rest[:-1]:
            v = _int(tok, lineno, "variable", "index")
            if not 1 <= v <= n:
                raise ParseError(f"variable {v} outside 1..{n}", lineno, "index")
            bit = 1 << (v - 1)
            if lhs & bit:
                raise ParseError(f"variable {v} repeated in one equation", lineno, "duplicate")
            lhs |= bit
        if lhs == 0:
            raise ParseError("empty left-hand side", lineno, "empty")
        eqs.append((WeightedEquation(lhs, rhs, weight), lineno))
    if header is None:
        raise ParseError("missing 'p lin <n> <m>' header", None, "header")
    n, m = header
    if len(eqs) != m:
        raise ParseError(f"header declares {m} equations, found {len(eqs)}", None, "count")
    try:
        return LinearSystem(n, tuple(eq for eq, _ in eqs))
    except WeightOverflowError as exc:
        raise ParseError(str(exc), None, "weight") from None


def serialize_lin(system: LinearSystem, comments: Iterable[str] = ()) -> str:
    out = [f"c {c}" if c else "c" for c in comments]
    out.append(f"p lin {system.n_vars} {system.m}")
    for eq in system.equations:
        vs = " ".join(str(i + 1) for i in eq.variables)
        out.append(f"{eq.weight} {eq.rhs} {vs} 0")
    return "\n".join(out) + "\n"


def parse_dimacs(text: str) -> CnfFormula:
    header = None
    clauses: list[tuple[int, ...]] = []
    current: list[int] = []
    start = None
    for lineno, line in _content_lines(text):
        if line.startswith("%"):
            break
        if line.startswith("p"):
            if header is not None:
                raise ParseError("second header line", lineno, "header")
            header = _header(line, lineno, "cnf")
            continue
        if header is None:
            raise ParseError("clause before the 'p cnf' header", lineno, "header")
        for tok in line.split():
            lit = _int(tok, lineno, "literal", "syntax")
            if start is None:
                start = lineno
            if lit == 0:
                clauses.append(_checked_clause(current, header[0], start))
                current, start = [], None
                continue
            current.append(lit)
    if header is None:
        raise ParseError("missing 'p cnf <n> <m>' header", None, "header")
    if current:
        raise ParseError("last clause is not terminated by 0", start, "terminator")
    n, m = header
    if len(clauses) != m:
        raise ParseError(f"header declares {m} clauses, found {len(clauses)}", None, "count")
    widths = {len(c) for c in clauses}
    if len(widths) > 1:
        raise ParseError(f"clause widths differ: {sorted(widths)}", None, "width")
    r = widths.pop() if widths else 2
    if r < 2:
        raise ParseError(f"clause width {r} is below 2", None, "width")
    return CnfFormula(n, tuple(clauses), r)


def _checked_clause(lits: list[int], n: int, lineno: int) -> tuple[int, ...]:
    if not lits:
        raise ParseError("empty clause", lineno, "empty")
    seen: dict[int, int] = {}
    for lit in lits:
        v = abs(lit)
        if v > n:
            raise ParseError(f"variable {v} outside 1..{n}", lineno, "index")
        if v in seen:
            if seen[v] != lit:
                raise ParseError(f"tautological clause on variable {v}", lineno, "tautology")
            raise ParseError(f"literal {lit} repeated in one clause", lineno, "duplicate")
        seen[v] = lit
    return tuple(lits)


def serialize_dimacs(f: CnfFormula, comments: Iterable[str] = ()) -> str:
    out = [f"c {c}" if c else "c" for c in comments]
    out.append(f"p cnf {f.n_vars} {f.m}")
    out.extend(" ".join(map(str, clause)) + " 0" for clause in f.clauses)
    return "\n".join(out) + "\n"


def _bits(witness) -> str | None:
    return None if witness is None else "".join(str(b) for b in witness)


def result_fields(v: Verdict) -> dict:
    return {
        "answer": v.answer,
        "k": v.k,
        "excess2_optimum": v.optimum_excess2,
        "certificate_excess2": v.certificate_excess2,
        "witness": _bits(v.witness),
        "strategy": v.strategy_used,
        "marks": v.stats.iterations,
        "equations_deleted": v.stats.equations_deleted,
        "residual_size": v.stats.residual_size,
        "elapsed_s": v.elapsed_s,
    }


def serialize_result(v: Verdict, format: str = "json") -> str:
    fields = result_fields(v)
    if format == "json":
        # insertion order is the stable field order
        return json.dumps(fields) + "\n"
    if format == "text":
        lines = [f"s {v.answer.upper()}"]
        for key, value in fields.items():
            if key == "answer" or value is None:
                continue
            lines.append(f"{key} {value}")
        return "\n".join(lines) + "\n"
    raise ValueError(f"unknown result format {format!r}")


def parse_result(text: str) -> Verdict:
    try:
        doc = json.loads(text)
        witness = doc["witness"]
        if witness is not None:
            if set(witness) - {"0", "1"}:
                raise ValueError(f"witness {witness!r} is not a 0/1 string")
            witness = tuple(int(ch) for ch in witness)
        return Verdict(
            answer=doc["answer"],
            k=doc["k"],
            strategy_used=doc["strategy"],
            witness=witness,
            certificate_excess2=doc["certificate_excess2"],
            optimum_excess2=doc["excess2_optimum"],
            stats=Stats(doc["marks"], doc["equations_deleted"], doc["residual_size"]),
            elapsed_s=doc["elapsed_s"],
        )
    except (KeyError, TypeError, ValueError, ContractError) as exc:
        raise ParseError(f"malformed result document: {exc}", None, "result") from None
