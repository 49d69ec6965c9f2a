"""Ensemble ratio experiments: how tight is the bound across random graphs.

For each cell (n, p, run) a connected configuration-model graph with
zero-truncated Binomial(d_max, p) degrees is generated, its first
bifurcation located, and the ratio tau_c / omega recorded, omega being
the closed-form bound evaluated at the graph's observed extremal degrees.
Everything is keyed off one master seed so a sweep is reproducible byte
for byte.
"""

from __future__ import annotations

import csv
import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .bifurcation import classify
from .bounds import Case1Params, omega_case1
from .graphs import GenerationError, configuration_model, sample_binomial_degrees

__all__ = [
    "SweepRecord",
    "SweepSummary",
    "CellFailure",
    "SweepResult",
    "run_sweep",
    "summarize",
    "write_records_csv",
    "read_records_csv",
    "write_summaries_csv",
]

RECORD_FIELDS = ("n", "p", "seed", "d_min", "d_max", "tau_c", "omega", "ratio")

_CI_Z = 1.96  # normal-approximation 95% interval


@dataclass(frozen=True)
class SweepRecord:
    n: int
    p: float
    seed: int
    d_min: int
    d_max: int
    tau_c: float
    omega: float
    ratio: float


@dataclass(frozen=True)
class SweepSummary:
    group: float
    mean_ratio: float
    ci95_low: float
    ci95_high: float
    count: int


@dataclass(frozen=True)
class CellFailure:
    n: int
    p: float
    run: int
    reason: str


@dataclass(frozen=True)
class SweepResult:
    records: tuple[SweepRecord, ...]
    failures: tuple[CellFailure, ...]


def _cell_seed(master_seed: int, i_n: int, i_p: int, run: int) -> int:
    ss = np.random.SeedSequence([int(master_seed), i_n, i_p, run])
    return int(ss.generate_state(1, np.uint64)[0])


def _run_cell(n: int, p: float, seed: int, d_max: int) -> SweepRecord:
    rng = np.random.default_rng(seed)
    degrees = sample_binomial_degrees(n, d_max, p, rng)
    graph = configuration_model(degrees, rng)
    report = classify(graph)
    bound = omega_case1(Case1Params(graph.d_min, graph.d_max))
    return SweepRecord(
        n=n,
        p=p,
        seed=seed,
        d_min=graph.d_min,
        d_max=graph.d_max,
        tau_c=report.tau_c,
        omega=bound.omega,
        ratio=report.tau_c / bound.omega,
    )


def run_sweep(
    ns,
    ps,
    runs: int,
    d_max: int = 30,
    master_seed: int = 0,
    threads: int = 1,
) -> SweepResult:
    """Ratio records for every (n, p, run) cell, deterministic in master_seed.

    Generation failures (attempt-budget exhaustion) are collected per cell
    and excluded from the records rather than silently dropped. Results
    come back in (n, p, run) order regardless of thread count.
    """
    if runs < 2:
        raise ValueError("need at least 2 runs per cell")
    if d_max < 2:
        raise ValueError("need d_max >= 2")
    cells = [
        (n, p, run, _cell_seed(master_seed, i_n, i_p, run))
        for i_n, n in enumerate(ns)
        for i_p, p in enumerate(ps)
        for run in range(runs)
    ]

    def work(cell):
        n, p, run, seed = cell
        try:
            return _run_cell(n, p, seed, d_max), None
        except GenerationError as e:
            return None, CellFailure(n, p, run, str(e))

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            outcomes = list(pool.map(work, cells))
    else:
        outcomes = [work(c) for c in cells]

    records = tuple(rec for rec, _ in outcomes if rec is not None)
    failures = tuple(fail for _, fail in outcomes if fail is not None)
    return SweepResult(records, failures)


def summarize(records, group_by: str) -> list[SweepSummary]:
    """Per-group ratio mean with a normal-approximation 95% interval."""
    if group_by not in ("n", "p"):
        raise ValueError("group_by must be 'n' or 'p'")
    groups: dict[float, list[float]] = {}
    for rec in records:
        groups.setdefault(getattr(rec, group_by), []).append(rec.ratio)
    out = []
    for key in sorted(groups):
        vals = np.array(groups[key])
        if vals.size < 2:
            raise ValueError(f"group {group_by}={key} has fewer than 2 records")
        mean = float(vals.mean())
        half = _CI_Z * float(vals.std(ddof=1)) / np.sqrt(vals.size)
        out.append(
            SweepSummary(
                group=float(key),
                mean_ratio=mean,
                ci95_low=mean - half,
                ci95_high=mean + half,
                count=int(vals.size),
            )
        )
    return out


def _fmt(x) -> str:
    return format(x, ".17g") if isinstance(x, float) else str(x)


def write_records_csv(records, path) -> None:
    with Path(path).open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(RECORD_FIELDS)
        for rec in records:
            writer.writerow([_fmt(getattr(rec, f)) for f in RECORD_FIELDS])


def read_records_csv(path) -> tuple[SweepRecord, ...]:
    records = []
    with Path(path).open(newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames != list(RECORD_FIELDS):
            raise ValueError(f"{path}: unexpected header {reader.fieldnames}")
        for row in reader:
            records.append(
                SweepRecord(
                    n=int(row["n"]),
                    p=float(row["p"]),
                    seed=int(row["seed"]),
                    d_min=int(row["d_min"]),
                    d_max=int(row["d_max"]),
                    tau_c=float(row["tau_c"]),
                    omega=float(row["omega"]),
                    ratio=float(row["ratio"]),
                )
            )
    return tuple(records)


def write_summaries_csv(summaries, group_by: str, path) -> None:
    with Path(path).open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow([group_by, "mean_ratio", "ci95_low", "ci95_high", "count"])
        for s in summaries:
            writer.writerow(
                [_fmt(s.group), _fmt(s.mean_ratio), _fmt(s.ci95_low), _fmt(s.ci95_high), s.count]
            )


def failures_json(failures) -> str:
    return json.dumps(
        [{"n": f.n, "p": f.p, "run": f.run, "reason": f.reason} for f in failures]
    )
