"""Seeded G(n, p) experiments: certified lower bounds on domhad against colouring upper bounds."""

from __future__ import annotations

import csv
import hashlib
import io
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from .constructive import Colouring, checked_colouring, greedy_colouring
from .exact import bits
from .graph import Graph, is_connected_set
from .models import CliqueModel, checked, verify_model


@dataclass(frozen=True)
class GnpSpec:
    n: int
    p: float
    seed: int

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("n must be positive")
        if not 0 < self.p < 1:
            raise ValueError("p must lie strictly between 0 and 1")

    @property
    def b(self) -> float:
        return 1 / (1 - self.p)


def sample_gnp(spec: GnpSpec) -> Graph:
    """One uniform draw per pair, pairs in lexicographic order (u < v)."""
    rng = np.random.default_rng(spec.seed)
    iu, ju = np.triu_indices(spec.n, 1)
    keep = rng.random(len(iu)) < spec.p
    return Graph.from_edges(spec.n, zip(iu[keep].tolist(), ju[keep].tolist()))


def log_base(n: int, p: float) -> float:
    return math.log(n) / math.log(1 / (1 - p))


@dataclass(frozen=True)
class LowerBound:
    t: int
    certificate: CliqueModel
    part_size: int
    initial_parts: int
    bad_parts: int
    bad_pairs: int
    degraded: bool = False


def _largest_valid_prefix_family(g: Graph, parts: list[list[int]]) -> list[list[int]]:
    kept: list[list[int]] = []
    for part in parts:
        if verify_model(g, CliqueModel.of(kept + [part])):
            kept.append(part)
    return kept


def domhad_lower_bound(g: Graph, epsilon: float, p: float) -> LowerBound:
    """Certified dominating model from an equal partition into blocks of consecutive ids.

    Block size is ceil((1 + epsilon) log_b n) with b = 1/(1-p); leftover
    vertices join the last block.  Disconnected blocks are dropped, then for
    each pair i < j (in index order) where some vertex of block j misses
    block i, block j is dropped.
    """
    if not 0 < epsilon < 1:
        raise ValueError("epsilon must lie in (0, 1)")
    if not 0 < p < 1:
        raise ValueError("p must lie in (0, 1)")
    n = g.n
    if n == 0:
        raise ValueError("graph is empty")
    size = max(1, math.ceil((1 + epsilon) * log_base(n, p))) if n > 1 else 1
    size = min(size, n)
    count = n // size
    parts = [list(range(i * size, (i + 1) * size)) for i in range(count)]
    parts[-1].extend(range(count * size, n))
    good = [part for part in parts if is_connected_set(g, part)]
    bad_parts = len(parts) - len(good)
    sets = [frozenset(part) for part in good]
    alive = [True] * len(good)
    bad_pairs = 0
    for j in range(len(good)):
        for i in range(j):
            if alive[i] and alive[j] and any(sets[i].isdisjoint(g.adj[v]) for v in good[j]):
                bad_pairs += 1
                alive[j] = False
    kept = [part for part, ok in zip(good, alive) if ok]
    degraded = False
    if not kept or not verify_model(g, CliqueModel.of(kept)):
        degraded = True
        kept = _largest_valid_prefix_family(g, kept or parts) or [[0]]
    model = checked(g, CliqueModel.of(kept))
    return LowerBound(model.t, model, size, len(parts), bad_parts, bad_pairs, degraded)


def greedy_dominating_model(g: Graph) -> CliqueModel:
    """Dominating model grown part by part from a shrinking pool of candidates.

    The pool starts as V(g).  Each part starts at the pool vertex with most
    pool neighbours and absorbs adjacent pool vertices while that dominates
    more pool vertices than it uses up; the next pool is the part's pool
    neighbourhood.  Each later part therefore lies in the neighbourhood of
    every earlier one.
    """
    masks = g.masks
    pool = (1 << g.n) - 1
    parts = []
    while pool:
        v = max(bits(pool), key=lambda u: ((masks[u] & pool).bit_count(), -u))
        part = 1 << v
        dom = masks[v] & pool & ~part
        while True:
            frontier = 0
            for u in bits(part):
                frontier |= masks[u]
            best, best_u = 0, -1
            for u in bits(frontier & pool & ~part):
                low = 1 << u
                gain = (masks[u] & pool & ~(part | dom | low)).bit_count() - (1 if dom & low else 0)
                if gain > best:
                    best, best_u = gain, u
            if best_u < 0:
                break
            part |= 1 << best_u
            dom = (dom | masks[best_u]) & pool & ~part
        parts.append(list(bits(part)))
        pool = dom & ~part
    return checked(g, CliqueModel.of(parts))


def chi_upper(g: Graph, seed: int, restarts: int = 32) -> Colouring:
    """Best greedy colouring over ``restarts`` uniformly random vertex orders."""
    if g.n == 0:
        return Colouring((), 0)
    rng = np.random.default_rng(seed)
    best = None
    for _ in range(max(1, restarts)):
        colour = greedy_colouring(g, rng.permutation(g.n).tolist())
        if best is None or max(colour) < max(best):
            best = colour
    return checked_colouring(g, Colouring.from_list(best))


def certificate_hash(model: CliqueModel) -> str:
    return hashlib.sha256(model.to_json().encode()).hexdigest()[:16]


# --- sweeps -------------------------------------------------------------------------


@dataclass
class Grid:
    n: list[int]
    p: list[float]
    trials: int
    seed: int
    epsilon: float = 0.5
    t: list[int] = field(default_factory=list)
    restarts: int = 32

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "Grid":
        if "seed" not in data:
            raise ValueError("grid needs an explicit 'seed'")
        as_list = lambda x: list(x) if isinstance(x, (list, tuple)) else [x]  # noqa: E731
        return cls(
            n=[int(v) for v in as_list(data.get("n", []))],
            p=[float(v) for v in as_list(data.get("p", []))],
            trials=int(data.get("trials", 0)),
            seed=int(data["seed"]),
            epsilon=float(data.get("epsilon", 0.5)),
            t=[int(v) for v in as_list(data.get("t", []))],
            restarts=int(data.get("restarts", 32)),
        )

    def cells(self) -> list[tuple[int, float]]:
        return [(n, p) for n in self.n for p in self.p]


def trial_seeds(master: int, cell: int, trial: int) -> tuple[int, int]:
    """(graph seed, colouring seed) for one trial; independent of evaluation order."""
    state = np.random.SeedSequence(master, spawn_key=(cell, trial)).generate_state(4, np.uint32)
    graph_seed = int(state[0]) << 32 | int(state[1])
    colour_seed = int(state[2]) << 32 | int(state[3])
    return graph_seed, colour_seed


def run_trial(n: int, p: float, epsilon: float, restarts: int, master: int, cell: int, trial: int,
              timings: bool = False, keep_certificate: bool = True) -> dict[str, Any]:
    start = time.perf_counter()
    graph_seed, colour_seed = trial_seeds(master, cell, trial)
    g = sample_gnp(GnpSpec(n, p, graph_seed))
    partition = domhad_lower_bound(g, epsilon, p)
    greedy = greedy_dominating_model(g)
    best = greedy if greedy.t > partition.t else partition.certificate
    colouring = chi_upper(g, colour_seed, restarts)
    record: dict[str, Any] = {
        "n": n,
        "p": p,
        "trial": trial,
        "graph_seed": graph_seed,
        "domhad_lower": best.t,
        "domhad_partition": partition.t,
        "domhad_greedy": greedy.t,
        "partition_degraded": partition.degraded,
        "certificate_hash": certificate_hash(best),
        "chi_upper": colouring.palette_size,
        "avg_degree": round(g.average_degree(), 6),
        "runtime_ms": round((time.perf_counter() - start) * 1000, 3) if timings else None,
    }
    if keep_certificate:
        record["certificate"] = best.to_dict()
    return record


def _aggregate(records: list[dict[str, Any]], n: int, p: float, ts: list[int]) -> dict[str, Any]:
    if not records:
        return {}
    scale = n / log_base(n, p) if n > 1 else 1.0

    def stats(key: str) -> dict[str, float]:
        vals = [r[key] for r in records]
        return {"mean": sum(vals) / len(vals), "min": min(vals), "max": max(vals)}

    out = {
        "domhad_lower": stats("domhad_lower"),
        "domhad_partition": stats("domhad_partition"),
        "domhad_greedy": stats("domhad_greedy"),
        "chi_upper": stats("chi_upper"),
        "avg_degree": stats("avg_degree"),
        "domhad_lower_ratio": sum(r["domhad_lower"] for r in records) / len(records) / scale,
        "partition_ratio": sum(r["domhad_partition"] for r in records) / len(records) / scale,
        "fraction_chi_le_domhad": sum(r["chi_upper"] <= r["domhad_lower"] for r in records) / len(records),
    }
    # first order without a certificate, against t ln t (heuristic: absence is not certified)
    t_open = max(r["domhad_lower"] for r in records) + 1
    out["first_uncertified_t"] = t_open
    out["avg_degree_over_tlnt"] = out["avg_degree"]["mean"] / (t_open * math.log(t_open))
    if ts:
        out["certified_fraction_by_t"] = {
            str(t): sum(r["domhad_lower"] >= t for r in records) / len(records) for t in ts
        }
    return out


def _trial_job(args: tuple) -> tuple[int, int, dict[str, Any] | None, str | None]:
    cell, trial, n, p, eps, restarts, master, timings = args
    try:
        return cell, trial, run_trial(n, p, eps, restarts, master, cell, trial, timings), None
    except (MemoryError, RecursionError, ValueError) as exc:
        return cell, trial, None, f"{type(exc).__name__}: {exc}"


def run_sweep(grid: Grid, jobs: int = 1, timings: bool = False,
              cell_time_limit: float | None = None) -> dict[str, Any]:
    """Run every (n, p) cell of the grid; the report depends only on the grid when timings are off.

    A cell whose trials fail, or that exceeds ``cell_time_limit`` seconds
    (sequential runs only), is marked incomplete and the sweep moves on.
    """
    tasks = [
        (ci, trial, n, p, grid.epsilon, grid.restarts, grid.seed, timings)
        for ci, (n, p) in enumerate(grid.cells())
        for trial in range(grid.trials)
    ]
    results: dict[tuple[int, int], tuple[dict | None, str | None]] = {}
    skipped: set[int] = set()
    if jobs > 1 and tasks:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for cell, trial, rec, err in pool.map(_trial_job, tasks):
                results[cell, trial] = (rec, err)
    else:
        started: dict[int, float] = {}
        for task in tasks:
            cell = task[0]
            started.setdefault(cell, time.monotonic())
            if cell_time_limit is not None and time.monotonic() - started[cell] > cell_time_limit:
                skipped.add(cell)
                continue
            c, trial, rec, err = _trial_job(task)
            results[c, trial] = (rec, err)
    cells = []
    for ci, (n, p) in enumerate(grid.cells()):
        records, errors = [], []
        for trial in range(grid.trials):
            rec, err = results.get((ci, trial), (None, None))
            if rec is not None:
                records.append(rec)
            elif err is not None:
                errors.append({"trial": trial, "error": err})
        complete = len(records) == grid.trials
        cells.append({
            "n": n,
            "p": p,
            "b": 1 / (1 - p),
            "n_over_log_b_n": n / log_base(n, p) if n > 1 else None,
            "complete": complete,
            "errors": errors,
            "trials": records,
            "aggregate": _aggregate(records, n, p, grid.t),
        })
    return {
        "grid": {"n": grid.n, "p": grid.p, "trials": grid.trials, "seed": grid.seed,
                 "epsilon": grid.epsilon, "t": grid.t, "restarts": grid.restarts},
        "cells": cells,
    }


def reverify_report(report: dict[str, Any]) -> list[str]:
    """Regenerate every trial graph from its seed and re-check the stored certificate."""
    problems = []
    for cell in report["cells"]:
        for rec in cell["trials"]:
            g = sample_gnp(GnpSpec(rec["n"], rec["p"], rec["graph_seed"]))
            model = CliqueModel.from_dict(rec["certificate"])
            verdict = verify_model(g, model)
            if not verdict or model.t != rec["domhad_lower"] or certificate_hash(model) != rec["certificate_hash"]:
                problems.append(f"n={rec['n']} p={rec['p']} trial={rec['trial']}: {verdict.reason or 'mismatch'}")
    return problems


CSV_COLUMNS = ["n", "p", "trial", "domhad_lower", "chi_upper", "avg_degree", "runtime_ms"]


def report_csv(report: dict[str, Any]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for cell in report["cells"]:
        for rec in cell["trials"]:
            writer.writerow(["" if rec[c] is None else rec[c] for c in CSV_COLUMNS])
    return buf.getvalue()
