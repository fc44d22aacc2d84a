"""Seeded random instances, reproducible bit-for-bit in any language.

The stream is SplitMix64 (Steele, Lea and Flood 2014): the state advances by
``0x9E3779B97F4A7C15`` modulo ``2**64`` and each output is the finalizer

    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB
    z = z ^ (z >> 31)

applied to the new state, all modulo ``2**64``.  The initial state is the
seed.  Derived draws:

* ``below(n)``: draw ``x`` until ``x < 2**64 - (2**64 mod n)``, return ``x mod n``.
* ``sample(n, s)``: partial Fisher-Yates on ``[0, 1, ..., n-1]``; for
  ``i = 0 .. s-1`` swap position ``i`` with ``i + below(n - i)``; return the
  first ``s`` entries in that order.

A linear equation draws, in order: size ``1 + below(r_max)``, its variables
``sample(n, size)``, rhs ``below(2)``, weight ``1 + below(weight_max)``.  A
clause draws ``sample(n, r)`` and then one ``below(2)`` per literal (1 keeps
the literal positive).
"""

from __future__ import annotations

from dataclasses import dataclass

from .gf2_core import LinearSystem, WeightedEquation, mask_of, reduce_fully
from .sat_bridge import CnfFormula

_MASK64 = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15


class SplitMix64:
    def __init__(self, seed: int):
        self.state = seed & _MASK64

    def next_u64(self) -> int:
        self.state = (self.state + _GAMMA) & _MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return z ^ (z >> 31)

    def below(self, n: int) -> int:
        if n <= 0:
            raise ValueError("bound must be positive")
        limit = (1 << 64) - ((1 << 64) % n)
        while True:
            x = self.next_u64()
            if x < limit:
                return x % n

    def sample(self, n: int, s: int) -> list[int]:
        if not 0 <= s <= n:
            raise ValueError(f"cannot sample {s} of {n}")
        pool = list(range(n))
        for i in range(s):
            j = i + self.below(n - i)
            pool[i], pool[j] = pool[j], pool[i]
        return pool[:s]


@dataclass(frozen=True)
class LinGenConfig:
    n: int
    m: int
    r_max: int
    weight_max: int = 1
    seed: int = 0
    reduce: bool = False

    def __post_init__(self):
        if self.n < 1 or self.m < 1:
            raise ValueError("n and m must be positive")
        if not 1 <= self.r_max <= self.n:
            raise ValueError(f"r_max must lie in 1..n, got {self.r_max}")
        if self.weight_max < 1:
            raise ValueError("weight_max must be positive")
        if self.seed < 0:
            raise ValueError("seed must be nonnegative")


@dataclass(frozen=True)
class CnfGenConfig:
    n: int
    m: int
    r: int
    seed: int = 0

    def __post_init__(self):
        if self.m < 1:
            raise ValueError("m must be positive")
        if not 2 <= self.r <= self.n:
            raise ValueError(f"need 2 <= r <= n, got r={self.r}, n={self.n}")
        if self.seed < 0:
            raise ValueError("seed must be nonnegative")


def gen_lin(cfg: LinGenConfig) -> LinearSystem:
    rng = SplitMix64(cfg.seed)
    eqs = []
    for _ in range(cfg.m):
        size = 1 + rng.below(cfg.r_max)
        variables = rng.sample(cfg.n, size)
        rhs = rng.below(2)
        weight = 1 + rng.below(cfg.weight_max)
        eqs.append(WeightedEquation(mask_of(variables), rhs, weight))
    system = LinearSystem(cfg.n, tuple(eqs))
    if cfg.reduce:
        system, _ = reduce_fully(system)
    return system


def gen_cnf(cfg: CnfGenConfig) -> CnfFormula:
    rng = SplitMix64(cfg.seed)
    clauses = []
    for _ in range(cfg.m):
        variables = rng.sample(cfg.n, cfg.r)
        clauses.append(tuple(v + 1 if rng.below(2) else -(v + 1) for v in variables))
    return CnfFormula(cfg.n, tuple(clauses), cfg.r)
