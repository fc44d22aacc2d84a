"""Max r-SAT above average, decided through a weighted GF(2) system.

Truth values use the ``x_i in {-1, +1}`` encoding with ``-1`` meaning true.
A truth assignment is stored as bits with 1 meaning true, which is exactly
``z_i`` under ``x_i = (-1) ** z_i``; the same bit vector therefore serves as
both the SAT witness and the linear-system witness.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Mapping, Sequence

from .errors import ContractError, DimensionError, InternalConsistencyError
from .fpt_solver import (
    DEFAULT_VAR_BUDGET,
    PivotRule,
    Stats,
    Verdict,
    brute_force,
    half_weight_greedy,
    lemma4_threshold,
    reconstruct,
    run_algorithm_a,
)
from .gf2_core import (
    LinearSystem,
    WeightedEquation,
    assignment_mask,
    evaluate,
    lift_assignment,
    mask_of,
)


@dataclass(frozen=True)
class CnfFormula:
    """A multiset of width-``r`` clauses in DIMACS literal convention.

    Literal ``v > 0`` is ``x_v`` and ``-v`` its negation, for ``1 <= v <= n_vars``.
    """

    n_vars: int
    clauses: tuple[tuple[int, ...], ...]
    r: int

    def __post_init__(self):
        clauses = tuple(tuple(c) for c in self.clauses)
        object.__setattr__(self, "clauses", clauses)
        if self.r < 2:
            raise ContractError(f"clause width must be at least 2, got {self.r}")
        for j, clause in enumerate(clauses):
            check_clause(clause, self.n_vars, self.r, j)

    @property
    def m(self) -> int:
        return len(self.clauses)


def check_clause(clause: Sequence[int], n_vars: int, r: int, index: int = 0) -> None:
    if len(clause) != r:
        raise ContractError(f"clause {index} has {len(clause)} literals, expected {r}")
    seen: dict[int, int] = {}
    for lit in clause:
        v = abs(lit)
        if lit == 0 or v > n_vars:
            raise ContractError(f"clause {index}: literal {lit} out of range 1..{n_vars}")
        if v in seen:
            kind = "is a tautology" if seen[v] != lit else "repeats a literal"
            raise ContractError(f"clause {index} {kind} on variable {v}")
        seen[v] = lit


@dataclass(frozen=True)
class MultilinearPolynomial:
    """``sum(c_I * prod(x_i for i in I))`` keyed by nonempty frozensets of 0-based indices."""

    terms: Mapping[frozenset, int]

    def __post_init__(self):
        for key, c in self.terms.items():
            if not key:
                raise ContractError("polynomial has a constant term")
            if c == 0:
                raise ContractError(f"zero coefficient stored for {sorted(key)}")

    @property
    def degree(self) -> int:
        return max((len(key) for key in self.terms), default=0)

    @property
    def variables(self) -> list[int]:
        used: set[int] = set()
        for key in self.terms:
            used |= key
        return sorted(used)


def formula_polynomial(f: CnfFormula) -> MultilinearPolynomial:
    """Expand ``sum_j (1 - prod_{lit in C_j} (1 + eps * x))`` and collect terms.

    For one clause the constant cancels, and each nonempty literal subset
    contributes ``-prod(eps)``.  Subsets are enumerated by bitmask, so the
    term order is deterministic.
    """
    acc: dict[frozenset, int] = {}
    for clause in f.clauses:
        r = len(clause)
        for sub in range(1, 1 << r):
            key = []
            sign = -1
            for pos in range(r):
                if sub >> pos & 1:
                    lit = clause[pos]
                    key.append(abs(lit) - 1)
                    if lit < 0:
                        sign = -sign
            fk = frozenset(key)
            acc[fk] = acc.get(fk, 0) + sign
    return MultilinearPolynomial({key: c for key, c in acc.items() if c != 0})


def sat_count(f: CnfFormula, truth: Sequence[int]) -> int:
    if len(truth) != f.n_vars:
        raise DimensionError(f"truth assignment has {len(truth)} values, formula has {f.n_vars}")
    tmask = assignment_mask(truth)
    count = 0
    for clause in f.clauses:
        for lit in clause:
            if (tmask >> (abs(lit) - 1) & 1) == (lit > 0):
                count += 1
                break
    return count


def evaluate_polynomial(p: MultilinearPolynomial, x: Sequence[int]) -> int:
    total = 0
    for key, c in p.terms.items():
        prod = c
        for i in key:
            xi = x[i]
            if xi not in (-1, 1):
                raise ValueError(f"x[{i}] = {xi!r}, expected -1 or +1")
            if xi < 0:
                prod = -prod
        total += prod
    return total


def spins(z: Sequence[int]) -> tuple[int, ...]:
    """``x_i = (-1) ** z_i``."""
    return tuple(-1 if b else 1 for b in z)


def poly_to_system(p: MultilinearPolynomial) -> LinearSystem:
    """One equation per term: rhs 0 for a positive coefficient, 1 for negative, weight ``|c|``.

    Only variables occurring in some term are kept, re-indexed in increasing
    order; :meth:`MultilinearPolynomial.variables` gives the original index
    of each.
    """
    used = p.variables
    remap = {v: i for i, v in enumerate(used)}
    eqs = tuple(
        WeightedEquation(mask_of(remap[v] for v in key), 0 if c > 0 else 1, abs(c))
        for key, c in p.terms.items()
    )
    return LinearSystem(len(used), eqs)


def sat_threshold_met(f: CnfFormula, satisfied: int, k: int) -> bool:
    """``satisfied >= E + k / 2**r`` with ``E = m * (1 - 2**-r)``, in integers."""
    scale = 1 << f.r
    return scale * satisfied >= scale * f.m - f.m + k


def decide_max_r_sat_aa(f: CnfFormula, k: int, var_budget: int = DEFAULT_VAR_BUDGET) -> Verdict:
    """Decide whether some truth assignment satisfies ``E + k * 2**-r`` clauses.

    With more than ``2**k * r`` variables in the polynomial the answer is yes
    and the marking algorithm supplies the witness.  Otherwise the polynomial
    is maximised exhaustively.  Verdict excess values are values of the
    polynomial, i.e. ``2**r`` times the gain over the average.
    """
    if k < 0:
        raise ContractError("k must be nonnegative")
    start = time.perf_counter()
    poly = formula_polynomial(f)
    system = poly_to_system(poly)
    used = poly.variables

    def finish(answer, tag, z=None, optimum=None, stats=Stats(residual_size=system.m)):
        truth = None
        if z is not None:
            truth = lift_assignment(z, used, f.n_vars)
            sat = sat_count(f, truth)
            if not sat_threshold_met(f, sat, k):
                raise InternalConsistencyError(f"{tag} truth assignment satisfies only {sat} clauses")
        return Verdict(
            answer=answer,
            k=k,
            strategy_used=tag,
            witness=truth,
            certificate_excess2=optimum if answer == "no" else None,
            optimum_excess2=optimum,
            stats=stats,
            elapsed_s=time.perf_counter() - start,
        )

    if k == 0:
        return finish("yes", "k_zero_greedy", half_weight_greedy(system))

    n_prime = system.n_vars
    if k <= n_prime.bit_length() and n_prime > (f.r << k):
        # one term per index set, so the system already has distinct left-hand sides
        assert lemma4_threshold(n_prime, system.max_lhs_size, k)
        trace = run_algorithm_a(system, k, PivotRule.MIN_OCCURRENCE)
        if len(trace) < k:
            raise InternalConsistencyError(f"only {len(trace)} of {k} marks above the variable threshold")
        z = reconstruct(trace)
        return finish("yes", "algorithm_a", z, stats=Stats(len(trace), trace.deleted, trace.residual.m))

    optimum, z = brute_force(system, var_budget)
    if evaluate(system, z)[1] != optimum:
        raise InternalConsistencyError("exhaustive witness does not attain the reported optimum")
    if optimum >= k:
        return finish("yes", "brute_force", z, optimum)
    return finish("no", "brute_force", optimum=optimum)
