"""Weighted linear systems over GF(2) and the two answer-preserving reductions.

A left-hand side is stored as a Python ``int`` used as a bit-vector: bit ``i``
set means variable ``z_i`` occurs.  Variables are 0-based throughout the
library; only the text formats in :mod:`maxlin.formats` are 1-based.

The question asked of a system is whether some assignment reaches
``2 * satisfied_weight - W >= k``.  That left-hand quantity is called
``excess2`` everywhere so no fractional arithmetic is ever needed.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import ContractError, DimensionError, WeightOverflowError

WEIGHT_MAX = 2**64 - 1

Assignment = tuple[int, ...]


def bits_of(mask: int) -> list[int]:
    """Indices of set bits in ``mask``, ascending."""
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def mask_of(indices: Iterable[int]) -> int:
    mask = 0
    for i in indices:
        if i < 0:
            raise ValueError(f"negative variable index {i}")
        bit = 1 << i
        if mask & bit:
            raise ContractError(f"variable {i} repeated within one left-hand side")
        mask |= bit
    return mask


def assignment_mask(values: Sequence[int]) -> int:
    mask = 0
    for i, v in enumerate(values):
        if v not in (0, 1):
            raise ValueError(f"assignment entry {i} is {v!r}, expected 0 or 1")
        if v:
            mask |= 1 << i
    return mask


@dataclass(frozen=True)
class WeightedEquation:
    """``sum(z_i for i in lhs) = rhs`` over GF(2), carrying a positive weight."""

    lhs: int
    rhs: int
    weight: int

    def __post_init__(self):
        if self.lhs <= 0:
            raise ContractError("equation has an empty left-hand side")
        if self.rhs not in (0, 1):
            raise ContractError(f"right-hand side must be 0 or 1, got {self.rhs!r}")
        if self.weight < 1:
            raise ContractError(f"weight must be positive, got {self.weight}")
        if self.weight > WEIGHT_MAX:
            raise WeightOverflowError(f"weight {self.weight} exceeds 64 bits")

    @classmethod
    def of(cls, variables: Iterable[int], rhs: int, weight: int = 1) -> "WeightedEquation":
        return cls(mask_of(variables), rhs, weight)

    @property
    def variables(self) -> list[int]:
        return bits_of(self.lhs)

    @property
    def size(self) -> int:
        return self.lhs.bit_count()

    def satisfied_by(self, amask: int) -> bool:
        return ((self.lhs & amask).bit_count() & 1) == self.rhs

    def __str__(self):
        lhs = " + ".join(f"z{i + 1}" for i in self.variables)
        return f"{lhs} = {self.rhs} (w={self.weight})"


@dataclass(frozen=True)
class LinearSystem:
    """An ordered multiset of weighted equations over ``z_0 .. z_{n_vars-1}``."""

    n_vars: int
    equations: tuple[WeightedEquation, ...] = ()

    def __post_init__(self):
        if self.n_vars < 0:
            raise ContractError("n_vars must be nonnegative")
        eqs = tuple(self.equations)
        object.__setattr__(self, "equations", eqs)
        limit = 1 << self.n_vars
        total = 0
        for j, eq in enumerate(eqs):
            if eq.lhs >= limit:
                raise ContractError(
                    f"equation {j} uses variable {eq.lhs.bit_length() - 1} "
                    f"but the system has {self.n_vars} variables"
                )
            total += eq.weight
        if total > WEIGHT_MAX:
            raise WeightOverflowError(f"total weight {total} exceeds 64 bits")

    @classmethod
    def build(cls, n_vars: int, rows: Iterable[tuple[Iterable[int], int, int]]) -> "LinearSystem":
        """Construct from ``(variables, rhs, weight)`` triples."""
        return cls(n_vars, tuple(WeightedEquation.of(v, b, w) for v, b, w in rows))

    def __len__(self):
        return len(self.equations)

    def __iter__(self):
        return iter(self.equations)

    @property
    def m(self) -> int:
        return len(self.equations)

    @property
    def total_weight(self) -> int:
        return sum(eq.weight for eq in self.equations)

    @property
    def used_mask(self) -> int:
        mask = 0
        for eq in self.equations:
            mask |= eq.lhs
        return mask

    @property
    def n_used(self) -> int:
        """Number of variables occurring in at least one equation."""
        return self.used_mask.bit_count()

    @property
    def max_lhs_size(self) -> int:
        return max((eq.size for eq in self.equations), default=0)

    def has_distinct_lhs(self) -> bool:
        return len({eq.lhs for eq in self.equations}) == len(self.equations)

    def __str__(self):
        body = "; ".join(str(eq) for eq in self.equations)
        return f"LinearSystem(n={self.n_vars}: {body or 'empty'})"


def evaluate(system: LinearSystem, a: Sequence[int]) -> tuple[int, int]:
    """Return ``(satisfied_weight, excess2)`` of ``system`` under assignment ``a``."""
    if len(a) != system.n_vars:
        raise DimensionError(
            f"assignment has {len(a)} values, system has {system.n_vars} variables"
        )
    amask = assignment_mask(a)
    sat = sum(eq.weight for eq in system.equations if eq.satisfied_by(amask))
    return sat, 2 * sat - system.total_weight


def apply_rule2(system: LinearSystem) -> LinearSystem:
    """Merge equations with identical left-hand sides.

    Equal right-hand sides add their weights, opposing ones cancel and the
    heavier side keeps the difference.  Classes that cancel exactly vanish.
    Each surviving class sits where its first member stood.
    """
    net: dict[int, int] = {}
    for eq in system.equations:
        signed = eq.weight if eq.rhs == 0 else -eq.weight
        net[eq.lhs] = net.get(eq.lhs, 0) + signed
    merged = [
        WeightedEquation(lhs, 0 if s > 0 else 1, abs(s))
        for lhs, s in net.items()
        if s != 0
    ]
    return LinearSystem(system.n_vars, tuple(merged))


def column_basis(system: LinearSystem) -> list[int]:
    """Greedy GF(2) column basis of the coefficient matrix, lowest index first.

    Column ``i`` is encoded as a bit-vector over equation indices.  A column is
    kept when it is not in the span of the columns kept before it.
    """
    columns = [0] * system.n_vars
    for j, eq in enumerate(system.equations):
        for i in eq.variables:
            columns[i] |= 1 << j
    # basis keyed by leading bit, kept fully reduced against earlier pivots
    pivots: dict[int, int] = {}
    kept = []
    for i, col in enumerate(columns):
        while col:
            top = col.bit_length() - 1
            if top not in pivots:
                pivots[top] = col
                kept.append(i)
                break
            col ^= pivots[top]
    return kept


def gf2_rank(system: LinearSystem) -> int:
    return len(column_basis(system))


def restrict_variables(system: LinearSystem, kept_vars: Sequence[int]) -> LinearSystem:
    """Drop every variable not in ``kept_vars`` and re-index the rest densely.

    An equation whose left-hand side becomes empty is a contract violation;
    with a column basis this never happens.
    """
    remap = {old: new for new, old in enumerate(kept_vars)}
    eqs = []
    for j, eq in enumerate(system.equations):
        lhs = 0
        for i in eq.variables:
            if i in remap:
                lhs |= 1 << remap[i]
        if lhs == 0:
            raise ContractError(f"equation {j} loses every variable")
        eqs.append(WeightedEquation(lhs, eq.rhs, eq.weight))
    return LinearSystem(len(kept_vars), tuple(eqs))


def apply_rule1(system: LinearSystem) -> tuple[LinearSystem, list[int]]:
    """Restrict the variables to a column basis of the coefficient matrix.

    Returns the restricted system and ``kept_vars`` mapping each new index to
    its original index.  Unused variables have zero columns and are dropped.
    """
    kept = column_basis(system)
    return restrict_variables(system, kept), kept


def reduce_fully(system: LinearSystem) -> tuple[LinearSystem, list[int]]:
    """Alternate both rules until neither changes the system.

    ``kept_vars`` is composed over all rounds, so it maps indices of the
    reduced system straight to indices of ``system``.
    """
    kept = list(range(system.n_vars))
    current = apply_rule2(system)
    while True:
        nxt, step = apply_rule1(current)
        kept = [kept[i] for i in step]
        nxt = apply_rule2(nxt)
        if nxt == current:
            return current, kept
        current = nxt


def lift_assignment(a: Sequence[int], kept_vars: Sequence[int], n_vars: int) -> Assignment:
    """Place reduced-system values at their original indices; everything else is 0."""
    if len(a) != len(kept_vars):
        raise DimensionError(f"assignment has {len(a)} values, expected {len(kept_vars)}")
    out = [0] * n_vars
    for value, original in zip(a, kept_vars):
        out[original] = value
    return tuple(out)


def is_fully_reduced(system: LinearSystem) -> bool:
    if apply_rule2(system) != system:
        return False
    reduced, kept = apply_rule1(system)
    return kept == list(range(system.n_vars)) and reduced == system


def occurrence_counts(system: LinearSystem) -> list[int]:
    """Number of equations containing each variable."""
    counts = [0] * system.n_vars
    for eq in system.equations:
        for i in eq.variables:
            counts[i] += 1
    return counts


def max_occurrence(system: LinearSystem) -> int:
    return max(occurrence_counts(system), default=0)
