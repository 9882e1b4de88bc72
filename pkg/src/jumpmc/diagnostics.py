"""Estimators and summaries computed from event traces and thinned samples.

Continuous-time output needs time-weighted estimators: a state's
contribution is the length of the interval it occupied, not its event
count.  The embedded jump chain (one count per jump) targets a different
law, proportional to pi times the total exit rate; both views are
provided because their disagreement is exactly what the non-balanced
rate function exhibits.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field as dc_field

import numpy as np
from scipy.fft import irfft, next_fast_len, rfft

from .errors import DomainError
from .samplers import (
    EVENT_FLIP_TAU,
    EVENT_JUMP,
    EVENT_VELOCITY,
    EventTrace,
    RunResult,
    _KIND_CODES,
)

__all__ = [
    "DegenerateSeriesWarning",
    "time_average",
    "trace_time_average",
    "occupancy",
    "jump_occupancy",
    "thin",
    "thin_series",
    "acf",
    "ess",
    "mean_excursion",
    "tv_distance",
    "RunStatistics",
    "summarize_run",
]


class DegenerateSeriesWarning(RuntimeWarning):
    """A series had zero variance where correlation structure was requested."""


def time_average(times, values, total_time: float, initial_value: float) -> float:
    """Mean of a piecewise-constant path over [0, total_time].

    ``values[i]`` is the level held from ``times[i]`` onward, starting
    from ``initial_value`` at time zero; each level is weighted by the
    length of the interval during which it was held.
    """
    t = np.asarray(times, dtype=float)
    v = np.asarray(values, dtype=float)
    if t.shape != v.shape or t.ndim != 1:
        raise DomainError("times and values must be 1-d arrays of equal length")
    if total_time <= 0:
        raise DomainError("total_time must be positive")
    edges = np.concatenate([[0.0], t, [float(total_time)]])
    levels = np.concatenate([[float(initial_value)], v])
    widths = np.diff(edges)
    if (widths < 0).any():
        raise DomainError("event times must be sorted and lie within [0, total_time]")
    return float(widths @ levels) / float(total_time)


def trace_time_average(trace: EventTrace, total_time: float | None = None) -> float:
    """Time average of the recorded statistic along a trace."""
    T = trace.total_time if total_time is None else float(total_time)
    return time_average(trace.times, trace.statistics, T, trace.initial_statistic)


def occupancy(
    times, values, total_time: float, initial_value, n_states: int
) -> np.ndarray:
    """Fraction of time spent in each of ``n_states`` integer levels."""
    t = np.asarray(times, dtype=float)
    v = np.asarray(values)
    edges = np.concatenate([[0.0], t, [float(total_time)]])
    levels = np.concatenate([[initial_value], v]).astype(np.int64)
    widths = np.diff(edges)
    if (widths < 0).any():
        raise DomainError("event times must be sorted and lie within [0, total_time]")
    if (levels < 0).any() or (levels >= n_states).any():
        raise DomainError("levels must be integers in [0, n_states)")
    out = np.zeros(n_states)
    np.add.at(out, levels, widths)
    return out / float(total_time)


def jump_occupancy(trace: EventTrace, n_states: int) -> np.ndarray:
    """Visit frequencies of the embedded jump chain (post-jump states).

    Uses the recorded statistic as the integer state label, so this is
    meant for targets whose statistic is the state index.
    """
    mask = trace.kinds == _KIND_CODES[EVENT_JUMP]
    levels = trace.statistics[mask].astype(np.int64)
    if levels.size == 0:
        raise DomainError("trace contains no jumps")
    if (levels < 0).any() or (levels >= n_states).any():
        raise DomainError("statistic values must be integers in [0, n_states)")
    counts = np.bincount(levels, minlength=n_states).astype(float)
    return counts / counts.sum()


def thin(trace: EventTrace, thinning: int, target):
    """States at 0, thinning, ..., total_time, replayed from the trace.

    The trace records which move fired at each jump, so the full state
    path is reconstructed exactly; at a snapshot instant that coincides
    with an event time the post-event state is reported.  Returns
    ``(times, states)``.
    """
    if int(thinning) != thinning or thinning <= 0:
        raise DomainError("thinning must be a positive integer")
    thinning = int(thinning)
    T = trace.total_time
    if T % thinning != 0:
        raise DomainError("total_time must be a multiple of thinning")
    grid = np.arange(0.0, T + thinning, thinning)
    x = target.copy_state(trace.initial_state)
    jump_code = _KIND_CODES[EVENT_JUMP]
    states = []
    k = 0
    for i in range(trace.n_events):
        t_i = trace.times[i]
        while k < len(grid) and grid[k] < t_i:
            states.append(target.copy_state(x))
            k += 1
        if trace.kinds[i] == jump_code:
            x = target.apply(int(trace.gids[i]), x)
        if k < len(grid) and grid[k] == t_i:
            states.append(target.copy_state(x))
            k += 1
    while k < len(grid):
        states.append(target.copy_state(x))
        k += 1
    return grid, states


def thin_series(times, values, total_time: float, thinning: int, initial_value):
    """Snapshot a piecewise-constant scalar path at 0, thinning, ..., total_time."""
    t = np.asarray(times, dtype=float)
    v = np.asarray(values, dtype=float)
    if int(thinning) != thinning or thinning <= 0:
        raise DomainError("thinning must be a positive integer")
    if total_time % int(thinning) != 0:
        raise DomainError("total_time must be a multiple of thinning")
    grid = np.arange(0.0, total_time + thinning, int(thinning))
    # index of the last event at or before each grid instant (post-event value)
    pos = np.searchsorted(t, grid, side="right")
    levels = np.concatenate([[float(initial_value)], v])
    return levels[pos]


def _autocorrelation(x: np.ndarray, max_lag: int):
    n = x.size
    centred = x - x.mean()
    var = float(centred @ centred) / n
    if var <= 0.0:
        rho = np.zeros(max_lag + 1)
        rho[0] = 1.0
        return rho, True
    m = next_fast_len(2 * n)
    spec = rfft(centred, m)
    cov = irfft(spec * np.conj(spec), m)[: max_lag + 1] / n
    return cov / cov[0], False


def acf(samples, max_lag: int) -> np.ndarray:
    """Normalized autocorrelation at lags 0..max_lag (biased estimator).

    ``acf[0]`` is always 1.  A zero-variance series yields zeros beyond
    lag 0 and a :class:`DegenerateSeriesWarning`.
    """
    x = np.asarray(samples, dtype=float)
    if x.ndim != 1 or x.size < 2:
        raise DomainError("need a 1-d series with at least two samples")
    if max_lag < 0:
        raise DomainError("max_lag must be nonnegative")
    max_lag = min(int(max_lag), x.size - 1)
    rho, degenerate = _autocorrelation(x, max_lag)
    if degenerate:
        warnings.warn(
            "series has zero variance; autocorrelation is undefined beyond lag 0",
            DegenerateSeriesWarning,
            stacklevel=2,
        )
    return rho


def ess(samples, max_lag: int = 3000) -> float:
    """Effective sample size n / (1 + 2 * sum of autocorrelations).

    The sum is truncated where consecutive lag pairs (1,2), (3,4), ...
    stop being positive, and at ``max_lag`` regardless.  The result is
    clipped to [1, n]; a zero-variance series counts as one effective
    sample.
    """
    x = np.asarray(samples, dtype=float)
    if x.ndim != 1 or x.size == 0:
        raise DomainError("need a nonempty 1-d series")
    n = x.size
    if n == 1:
        return 1.0
    used_lag = min(int(max_lag), n - 1)
    rho, degenerate = _autocorrelation(x, used_lag)
    if degenerate:
        warnings.warn(
            "series has zero variance; reporting one effective sample",
            DegenerateSeriesWarning,
            stacklevel=2,
        )
        return 1.0
    total = 0.0
    k = 1
    while k + 1 <= used_lag:
        pair = rho[k] + rho[k + 1]
        if pair <= 0.0:
            break
        total += pair
        k += 2
    out = n / (1.0 + 2.0 * total)
    return float(min(float(n), max(1.0, out)))


def mean_excursion(trace: EventTrace) -> float:
    """Average number of jumps between consecutive direction events.

    Defined for the two samplers with a global direction: jumps per
    direction flip for the availability sampler, jumps per velocity
    refresh for the single-move sampler.  NaN (with a warning) when no
    direction event occurred.
    """
    if trace.sampler_kind == "tabu":
        reset_code = _KIND_CODES[EVENT_FLIP_TAU]
    elif trace.sampler_kind == "dcs":
        reset_code = _KIND_CODES[EVENT_VELOCITY]
    else:
        raise DomainError(
            "excursions are defined for the availability and single-move "
            f"samplers, not {trace.sampler_kind!r}"
        )
    n_jumps = int(np.count_nonzero(trace.kinds == _KIND_CODES[EVENT_JUMP]))
    n_resets = int(np.count_nonzero(trace.kinds == reset_code))
    if n_resets == 0:
        warnings.warn(
            "no direction events in trace; excursion length is undefined",
            DegenerateSeriesWarning,
            stacklevel=2,
        )
        return math.nan
    return n_jumps / n_resets


def tv_distance(p, q) -> float:
    """Total variation distance between two laws on the same finite set."""
    a = np.asarray(p, dtype=float)
    b = np.asarray(q, dtype=float)
    if a.shape != b.shape:
        raise DomainError("laws must have the same shape")
    return 0.5 * float(np.abs(a - b).sum())


@dataclass
class RunStatistics:
    """Per-run summary used by reports and the comparison command."""

    sampler_kind: str
    statistic_name: str
    n_events: int
    process_time: float
    wall_time: float
    event_counts: dict
    thinned_count: int
    burn_in: float
    statistic_mean: float
    statistic_std: float
    ess: float
    ess_per_second: float
    mean_event_time: float
    mean_excursion_length: float | None = None
    acf_head: list = dc_field(default_factory=list)

    def to_dict(self) -> dict:
        out = dict(self.__dict__)
        out["acf_head"] = [float(v) for v in self.acf_head]
        return out


def summarize_run(
    result: RunResult, burn_in: float = 0.2, max_lag: int = 3000, acf_keep: int = 50
) -> RunStatistics:
    """Standard summary of one run from its thinned statistic series.

    ``burn_in`` is the fraction of thinned samples dropped before
    computing moments and the effective sample size.
    """
    if not 0.0 <= burn_in < 1.0:
        raise DomainError("burn_in must lie in [0, 1)")
    trace = result.trace
    stats = result.thinned_statistics
    drop = int(burn_in * len(stats))
    used = stats[drop:]
    if used.size < 2:
        raise DomainError("too few thinned samples after burn-in")
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", DegenerateSeriesWarning)
        ess_val = ess(used, max_lag)
        rho = acf(used, min(acf_keep, used.size - 1))
    try:
        exc = mean_excursion(trace)
        if math.isnan(exc):
            exc = None
    except DomainError:
        exc = None

    t0 = burn_in * trace.total_time
    late = trace.times >= t0
    n_late = int(np.count_nonzero(late))
    if n_late >= 2:
        late_times = trace.times[late]
        mean_event = float((late_times[-1] - late_times[0]) / (n_late - 1))
    else:
        mean_event = math.nan

    return RunStatistics(
        sampler_kind=trace.sampler_kind,
        statistic_name=trace.statistic_name,
        n_events=trace.n_events,
        process_time=trace.total_time,
        wall_time=result.wall_time,
        event_counts=trace.event_counts(),
        thinned_count=int(used.size),
        burn_in=burn_in,
        statistic_mean=float(used.mean()),
        statistic_std=float(used.std(ddof=1)),
        ess=float(ess_val),
        ess_per_second=float(ess_val / result.wall_time) if result.wall_time > 0 else math.inf,
        mean_event_time=mean_event,
        mean_excursion_length=exc,
        acf_head=list(np.asarray(rho, dtype=float)),
    )
