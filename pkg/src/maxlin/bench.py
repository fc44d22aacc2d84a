"""Benchmark campaign: marks reached by the marking algorithm versus the two thresholds.

A campaign file is JSON whose list-valued keys are crossed::

    {"n": [12, 20], "m": [30], "r_max": [2, 3], "weight_max": [1],
     "k": [1, 2, 3], "pivot": ["min_occurrence", "first_available"],
     "seeds": [0, 1, 2], "workers": 1}

``seeds`` may also be ``{"start": 0, "count": 50}``.  Each seed yields a
fully reduced instance; every ``(k, pivot)`` pair is then one CSV row.
"""

from __future__ import annotations

import csv
import io
import itertools
import json
from concurrent.futures import ProcessPoolExecutor

from .fpt_solver import PivotRule, lemma4_threshold, run_algorithm_a, theorem2_threshold
from .gf2_core import max_occurrence
from .instance_gen import LinGenConfig, gen_lin

COLUMNS = [
    "seed", "n", "m", "r_max", "weight_max", "k", "pivot",
    "n_reduced", "m_reduced", "r_reduced", "rho",
    "lemma4", "theorem2", "marks", "reached_k", "deleted",
]

_DEFAULTS = {
    "n": [12], "m": [24], "r_max": [3], "weight_max": [1],
    "k": [1, 2, 3], "pivot": [p.value for p in PivotRule], "seeds": [0],
}


def load_campaign(text: str) -> dict:
    raw = json.loads(text)
    if not isinstance(raw, dict):
        raise ValueError("campaign must be a JSON object")
    unknown = set(raw) - set(_DEFAULTS) - {"workers"}
    if unknown:
        raise ValueError(f"unknown campaign keys: {sorted(unknown)}")
    spec = {**_DEFAULTS, **raw}
    seeds = spec["seeds"]
    if isinstance(seeds, dict):
        seeds = list(range(seeds.get("start", 0), seeds.get("start", 0) + seeds["count"]))
    spec["seeds"] = list(seeds)
    for key in _DEFAULTS:
        if not isinstance(spec[key], list):
            spec[key] = [spec[key]]
    for p in spec["pivot"]:
        PivotRule(p)
    spec["workers"] = int(spec.get("workers", 1))
    return spec


def _instance_rows(args):
    seed, n, m, r_max, wmax, ks, pivots = args
    system = gen_lin(LinGenConfig(n, m, r_max, wmax, seed, reduce=True))
    rho = max_occurrence(system)
    rows = []
    for k, pivot in itertools.product(ks, pivots):
        trace = run_algorithm_a(system, k, PivotRule(pivot))
        rows.append({
            "seed": seed, "n": n, "m": m, "r_max": r_max, "weight_max": wmax,
            "k": k, "pivot": pivot,
            "n_reduced": system.n_used, "m_reduced": system.m,
            "r_reduced": system.max_lhs_size, "rho": rho,
            "lemma4": int(lemma4_threshold(system.n_used, system.max_lhs_size, k)),
            "theorem2": int(theorem2_threshold(system.m, rho, k)),
            "marks": len(trace), "reached_k": int(len(trace) >= k),
            "deleted": trace.deleted,
        })
    return rows


def run_campaign(spec: dict) -> list[dict]:
    jobs = [
        (seed, n, m, r, w, spec["k"], spec["pivot"])
        for seed, n, m, r, w in itertools.product(
            spec["seeds"], spec["n"], spec["m"], spec["r_max"], spec["weight_max"]
        )
        if r <= n
    ]
    if spec.get("workers", 1) > 1:
        with ProcessPoolExecutor(max_workers=spec["workers"]) as pool:
            chunks = list(pool.map(_instance_rows, jobs))
    else:
        chunks = [_instance_rows(job) for job in jobs]
    rows = [row for chunk in chunks for row in chunk]
    rows.sort(key=lambda r: tuple(r[c] for c in COLUMNS[:7]))
    return rows


def rows_to_csv(rows: list[dict]) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=COLUMNS, lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    return buf.getvalue()
