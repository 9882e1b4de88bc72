"""File formats: traces, thinned samples, run statistics, matrices, reports.

Everything is plain CSV or JSON.  Trace files carry their run metadata in
``#``-prefixed comment lines so that a trace can be reloaded without the
config that produced it.
"""

from __future__ import annotations

import csv
import json
from pathlib import Path

import numpy as np

from .diagnostics import RunStatistics
from .errors import DomainError
from .samplers import _KIND_CODES, _KIND_NAMES, EventTrace

__all__ = [
    "write_trace_csv",
    "read_trace_csv",
    "write_samples_csv",
    "read_samples_csv",
    "write_stats_json",
    "read_stats_json",
    "write_report_csv",
    "save_matrix",
    "load_matrix",
]

_TRACE_HEADER = ["process_time", "kind", "generator_id", "statistic"]


def write_trace_csv(path, trace: EventTrace) -> None:
    """One event per line: time, kind, move id (empty if none), statistic."""
    path = Path(path)
    with path.open("w", newline="") as fh:
        fh.write(f"# sampler={trace.sampler_kind}\n")
        fh.write(f"# statistic={trace.statistic_name}\n")
        fh.write(f"# total_time={trace.total_time:.17g}\n")
        fh.write(f"# initial_statistic={trace.initial_statistic:.17g}\n")
        writer = csv.writer(fh)
        writer.writerow(_TRACE_HEADER)
        for i in range(trace.n_events):
            gid = int(trace.gids[i])
            writer.writerow(
                [
                    f"{trace.times[i]:.17g}",
                    _KIND_NAMES[trace.kinds[i]],
                    "" if gid < 0 else gid,
                    f"{trace.statistics[i]:.17g}",
                ]
            )


def read_trace_csv(path) -> EventTrace:
    """Inverse of :func:`write_trace_csv` (states are not part of the file)."""
    path = Path(path)
    meta = {}
    times, kinds, gids, stats = [], [], [], []
    with path.open() as fh:
        reader = csv.reader(fh)
        for row in reader:
            if not row:
                continue
            if row[0].startswith("#"):
                key, _, value = row[0].lstrip("# ").partition("=")
                meta[key] = value
                continue
            if row[0] == _TRACE_HEADER[0]:
                continue
            times.append(float(row[0]))
            kinds.append(_KIND_CODES[row[1]])
            gids.append(int(row[2]) if row[2] != "" else -1)
            stats.append(float(row[3]))
    for key in ("sampler", "statistic", "total_time", "initial_statistic"):
        if key not in meta:
            raise DomainError(f"trace file is missing the {key!r} header line")
    return EventTrace(
        sampler_kind=meta["sampler"],
        statistic_name=meta["statistic"],
        total_time=float(meta["total_time"]),
        initial_state=None,
        initial_statistic=float(meta["initial_statistic"]),
        times=np.asarray(times, dtype=float),
        kinds=np.asarray(kinds, dtype=np.int8),
        gids=np.asarray(gids, dtype=np.int64),
        statistics=np.asarray(stats, dtype=float),
    )


def write_samples_csv(path, times, states, target) -> None:
    """Thinned snapshots: one row per instant, t plus the state columns."""
    path = Path(path)
    header = ["t"] + target.state_header()
    with path.open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        for t, x in zip(times, states):
            writer.writerow([f"{float(t):.17g}"] + target.state_row(x))


def read_samples_csv(path):
    """Returns (times, rows, header) with rows as float arrays."""
    path = Path(path)
    with path.open() as fh:
        reader = csv.reader(fh)
        header = next(reader)
        times, rows = [], []
        for row in reader:
            if not row:
                continue
            times.append(float(row[0]))
            rows.append([float(v) for v in row[1:]])
    return np.asarray(times), np.asarray(rows), header


def write_stats_json(path, stats: RunStatistics) -> None:
    Path(path).write_text(json.dumps(stats.to_dict(), indent=2) + "\n")


def read_stats_json(path) -> dict:
    return json.loads(Path(path).read_text())


def write_report_csv(path, results) -> None:
    """Exact-check report: one row per check."""
    path = Path(path)
    with path.open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["check", "space_size", "max_violation", "passed"])
        for r in results:
            writer.writerow([r.name, r.size, f"{r.max_violation:.17g}", r.passed])


def save_matrix(path, matrix) -> None:
    """Full-precision CSV for model matrices (couplings, kernels, weights)."""
    np.savetxt(Path(path), np.asarray(matrix, dtype=float), delimiter=",", fmt="%.17g")


def load_matrix(path) -> np.ndarray:
    out = np.loadtxt(Path(path), delimiter=",")
    return np.atleast_2d(out)
