"""Marking algorithm, witness reconstruction and the above-average decision procedure."""

from __future__ import annotations

import enum
import logging
import time
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import BudgetExceededError, ContractError, DimensionError, InternalConsistencyError
from .gf2_core import (
    Assignment,
    LinearSystem,
    WeightedEquation,
    apply_rule2,
    assignment_mask,
    evaluate,
    lift_assignment,
    max_occurrence,
    occurrence_counts,
    reduce_fully,
)

log = logging.getLogger(__name__)

DEFAULT_VAR_BUDGET = 28
# variables enumerated per dense transform block in brute_force
_BLOCK_BITS = 20


class PivotRule(str, enum.Enum):
    MIN_OCCURRENCE = "min_occurrence"
    FIRST_AVAILABLE = "first_available"


class Strategy(str, enum.Enum):
    AUTO = "auto"
    THEOREM1 = "theorem1"
    THEOREM2 = "theorem2"
    BRUTE = "brute"


@dataclass(frozen=True)
class Mark:
    equation: WeightedEquation
    pivot_var: int
    iteration: int


@dataclass(frozen=True)
class MarkTrace:
    marks: tuple[Mark, ...]
    residual: LinearSystem
    original: LinearSystem
    deleted: int = 0

    @property
    def marked_weight(self) -> int:
        return sum(mk.equation.weight for mk in self.marks)

    def __len__(self):
        return len(self.marks)


@dataclass(frozen=True)
class Stats:
    iterations: int = 0
    equations_deleted: int = 0
    residual_size: int = 0


@dataclass(frozen=True)
class Verdict:
    """Outcome of a decision.

    A yes carries ``witness`` (an assignment to the original input) and a no
    carries ``certificate_excess2``, the exact optimum.  ``optimum_excess2`` is
    filled whenever exhaustive search ran, whatever the answer.
    """

    answer: str
    k: int
    strategy_used: str
    witness: Assignment | None = None
    certificate_excess2: int | None = None
    optimum_excess2: int | None = None
    stats: Stats = field(default_factory=Stats)
    elapsed_s: float = 0.0

    def __post_init__(self):
        if self.answer not in ("yes", "no"):
            raise ValueError(f"answer must be 'yes' or 'no', got {self.answer!r}")
        if (self.answer == "yes") != (self.witness is not None):
            raise ValueError("a witness is present exactly when the answer is yes")
        if (self.answer == "no") != (self.certificate_excess2 is not None):
            raise ValueError("a certificate is present exactly when the answer is no")

    @property
    def is_yes(self) -> bool:
        return self.answer == "yes"


def _pick_pivot(eqs: list[WeightedEquation], n_vars: int, rule: PivotRule) -> int:
    if rule is PivotRule.FIRST_AVAILABLE:
        used = 0
        for eq in eqs:
            used |= eq.lhs
        return (used & -used).bit_length() - 1
    counts = occurrence_counts(LinearSystem(n_vars, tuple(eqs)))
    best = None
    for i, c in enumerate(counts):
        if c and (best is None or c < counts[best]):
            best = i
    return best


def run_algorithm_a(system: LinearSystem, k: int, rule: PivotRule = PivotRule.MIN_OCCURRENCE) -> MarkTrace:
    """Mark up to ``k`` equations, eliminating one pivot variable per mark.

    Each round picks a pivot (fewest occurrences, or simply the lowest present
    index), marks the first equation containing it, adds that equation to
    every other equation containing the pivot, then merges duplicates.
    Stops after ``k`` marks or when no equation is left.
    """
    if k < 0:
        raise ContractError("k must be nonnegative")
    if not system.has_distinct_lhs():
        raise ContractError("input system has repeated left-hand sides; apply rule 2 first")
    rule = PivotRule(rule)
    eqs = list(system.equations)
    marks: list[Mark] = []
    deleted = 0
    while eqs and len(marks) < k:
        pivot = _pick_pivot(eqs, system.n_vars, rule)
        bit = 1 << pivot
        j = next(idx for idx, eq in enumerate(eqs) if eq.lhs & bit)
        chosen = eqs.pop(j)
        marks.append(Mark(chosen, pivot, len(marks) + 1))
        eqs = [
            WeightedEquation(eq.lhs ^ chosen.lhs, eq.rhs ^ chosen.rhs, eq.weight)
            if eq.lhs & bit else eq
            for eq in eqs
        ]
        before = len(eqs)
        eqs = list(apply_rule2(LinearSystem(system.n_vars, tuple(eqs))).equations)
        deleted += 1 + before - len(eqs)
    residual = LinearSystem(system.n_vars, tuple(eqs))
    return MarkTrace(tuple(marks), residual, system, deleted)


def half_weight_greedy(system: LinearSystem) -> Assignment:
    """Assign variables in index order, each satisfying at least half its unit weight.

    Before ``z_j`` is fixed every equation has had the earlier variables
    substituted, so the ones reduced to ``z_j = b`` are exactly those whose
    highest variable is ``j``.  Ties go to 0.
    """
    live = [[eq.lhs, eq.rhs, eq.weight] for eq in system.equations]
    values = [0] * system.n_vars
    for j in range(system.n_vars):
        bit = 1 << j
        w = [0, 0]
        for lhs, rhs, weight in live:
            if lhs == bit:
                w[rhs] += weight
        v = 1 if w[1] > w[0] else 0
        values[j] = v
        nxt = []
        for row in live:
            if row[0] & bit:
                row[0] ^= bit
                row[1] ^= v
                if row[0] == 0:
                    continue
            nxt.append(row)
        live = nxt
    return tuple(values)


def extend_through_marks(trace: MarkTrace, residual_assignment: Sequence[int]) -> Assignment:
    """Back-substitute marked equations, last mark first, fixing each pivot.

    A pivot never occurs in the residual or in a later mark, so setting it
    cannot break anything already satisfied.
    """
    n = trace.original.n_vars
    if len(residual_assignment) != n:
        raise DimensionError(f"assignment has {len(residual_assignment)} values, expected {n}")
    values = list(residual_assignment)
    assignment_mask(values)
    frozen = trace.residual.used_mask
    for mk in reversed(trace.marks):
        bit = 1 << mk.pivot_var
        if not mk.equation.lhs & bit:
            raise ContractError(f"mark {mk.iteration}: pivot z{mk.pivot_var + 1} not in its equation")
        if frozen & bit:
            raise ContractError(
                f"mark {mk.iteration}: pivot z{mk.pivot_var + 1} occurs in the residual or a later mark"
            )
        parity = 0
        for i in mk.equation.variables:
            if i != mk.pivot_var:
                parity ^= values[i]
        values[mk.pivot_var] = parity ^ mk.equation.rhs
        frozen |= mk.equation.lhs
    return tuple(values)


def reconstruct(trace: MarkTrace) -> Assignment:
    """Assignment satisfying every mark plus at least half the residual weight."""
    return extend_through_marks(trace, half_weight_greedy(trace.residual))


def _fwht(a: np.ndarray) -> np.ndarray:
    # unnormalised Walsh-Hadamard: out[x] = sum_y a[y] * (-1)^popcount(x & y)
    size = a.size
    h = 1
    while h < size:
        a = a.reshape(-1, 2, h)
        a = np.stack((a[:, 0] + a[:, 1], a[:, 0] - a[:, 1]), axis=1)
        h *= 2
    return a.reshape(-1)


def brute_force(system: LinearSystem, var_budget: int = DEFAULT_VAR_BUDGET) -> tuple[int, Assignment]:
    """Exact maximum of excess2 over all assignments, with its witness.

    Among optimal assignments the lexicographically smallest is returned.
    Assignments are indexed with ``z_0`` as the most significant bit so that
    index order is lexicographic order; the excess of every assignment is then
    one Walsh-Hadamard transform of the signed weights, taken blockwise over
    the trailing variables when ``n`` is large.
    """
    n = system.n_vars
    if n > var_budget:
        raise BudgetExceededError(n, var_budget)
    if n == 0:
        return 0, ()

    dtype = np.int64 if 2 * system.total_weight < 2**62 else object
    rev = np.array([_reverse_bits(eq.lhs, n) for eq in system.equations], dtype=np.int64)
    signed = np.array(
        [eq.weight if eq.rhs == 0 else -eq.weight for eq in system.equations], dtype=dtype
    )
    low_bits = min(n, _BLOCK_BITS)
    high_bits = n - low_bits
    low_mask = (1 << low_bits) - 1
    rev_low = rev & low_mask
    rev_high = rev >> low_bits

    best_val = None
    best_idx = 0
    for h in range(1 << high_bits):
        if high_bits:
            flip = np.bitwise_count(rev_high & h) & 1
            w = np.where(flip == 1, -signed, signed)
        else:
            w = signed
        block = np.zeros(1 << low_bits, dtype=dtype)
        np.add.at(block, rev_low, w)
        excess = _fwht(block)
        pos = int(np.argmax(excess))
        val = int(excess[pos])
        if best_val is None or val > best_val:
            best_val = val
            best_idx = (h << low_bits) | pos
    witness = tuple((best_idx >> (n - 1 - i)) & 1 for i in range(n))
    return best_val, witness


def _reverse_bits(mask: int, n: int) -> int:
    out = 0
    for i in range(n):
        if mask >> i & 1:
            out |= 1 << (n - 1 - i)
    return out


def lemma4_threshold(n: int, r_max: int, k: int) -> bool:
    """``n >= 2**k * r_max``: enough variables that k marks are guaranteed."""
    if min(n, r_max, k) < 0:
        raise ValueError("threshold inputs must be nonnegative")
    if r_max == 0:
        return True
    # 2**k alone already exceeds n
    if k > n.bit_length():
        return False
    return n >= (r_max << k)


def theorem2_threshold(m: int, rho: int, k: int) -> bool:
    """``2 * rho * (k - 1) < m``: enough equations that k marks are guaranteed."""
    if min(m, rho, k) < 0:
        raise ValueError("threshold inputs must be nonnegative")
    return k == 0 or 2 * rho * (k - 1) < m


def decide(
    system: LinearSystem,
    k: int,
    strategy: Strategy | str = Strategy.AUTO,
    var_budget: int = DEFAULT_VAR_BUDGET,
) -> Verdict:
    """Decide whether some assignment reaches ``excess2 >= k``.

    The system is first reduced by both rules to a fixpoint.  ``theorem1``
    and ``theorem2`` run the marking algorithm only when their threshold
    guarantees success and otherwise enumerate; ``auto`` always tries marking
    first; ``brute`` only enumerates.  Every yes is re-checked on ``system``.
    """
    if k < 0:
        raise ContractError("k must be nonnegative")
    strategy = Strategy(strategy)
    start = time.perf_counter()
    reduced, kept = reduce_fully(system)

    def finish(answer, tag, reduced_witness=None, optimum=None, stats=Stats()):
        witness = None
        if reduced_witness is not None:
            witness = lift_assignment(reduced_witness, kept, system.n_vars)
            got = evaluate(system, witness)[1]
            if got < k:
                raise InternalConsistencyError(
                    f"{tag} witness reaches excess2 {got} < k={k} on the input system"
                )
        return Verdict(
            answer=answer,
            k=k,
            strategy_used=tag,
            witness=witness,
            certificate_excess2=optimum if answer == "no" else None,
            optimum_excess2=optimum,
            stats=stats,
            elapsed_s=time.perf_counter() - start,
        )

    if k == 0:
        return finish("yes", "k_zero_greedy", half_weight_greedy(reduced),
                      stats=Stats(residual_size=reduced.m))

    rule = None
    guaranteed = False
    if strategy is Strategy.THEOREM1:
        # an empty system meets the bound vacuously but admits no marks
        guaranteed = reduced.m > 0 and lemma4_threshold(reduced.n_used, reduced.max_lhs_size, k)
        rule = PivotRule.MIN_OCCURRENCE if guaranteed else None
    elif strategy is Strategy.THEOREM2:
        guaranteed = theorem2_threshold(reduced.m, max_occurrence(reduced), k)
        rule = PivotRule.FIRST_AVAILABLE if guaranteed else None
    elif strategy is Strategy.AUTO:
        rule = PivotRule.MIN_OCCURRENCE

    stats = Stats(residual_size=reduced.m)
    if rule is not None:
        trace = run_algorithm_a(reduced, k, rule)
        stats = Stats(len(trace), trace.deleted, trace.residual.m)
        if len(trace) >= k:
            return finish("yes", "algorithm_a", reconstruct(trace), stats=stats)
        if guaranteed:
            raise InternalConsistencyError(
                f"threshold for {strategy.value} held but only {len(trace)} of {k} marks were made"
            )
        log.debug("marking stopped at %d of %d marks; enumerating", len(trace), k)

    optimum, witness = brute_force(reduced, var_budget)
    if optimum >= k:
        return finish("yes", "brute_force", witness, optimum, stats)
    return finish("no", "brute_force", optimum=optimum, stats=stats)
