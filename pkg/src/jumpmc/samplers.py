"""Continuous-time jump process samplers over discrete move structures.

All four samplers simulate a Markov jump process exactly (no time
discretization, no rejected moves): draw an exponential holding time at
the total outgoing rate of the current state, then pick a transition in
proportion to its rate.

``plain``-style sampling uses the full move set at every state; the three
lifted samplers carry extra direction variables (a per-move availability
sign, a per-pair direction sign, or a single active move plus a sign) and
trade reversibility for persistent motion.  Rates always pass through a
balancing function applied to target density ratios, evaluated in the log
domain.

States are treated as immutable: ``step`` returns a fresh state object and
never touches its argument, so callers may keep old states (replays,
holding-time statistics) without copying.
"""

from __future__ import annotations

import math
import time as _time
import warnings
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import balancing as bal
from .errors import (
    AbsorbingStateError,
    ConsistencyError,
    DegenerateVelocityError,
    DomainError,
)
from .statespace import Target

__all__ = [
    "EVENT_JUMP",
    "EVENT_FLIP_TAU",
    "EVENT_FLIP_THETA",
    "EVENT_VELOCITY",
    "Event",
    "EventTrace",
    "ZanellaState",
    "TabuState",
    "DzzState",
    "DcsState",
    "ZanellaSampler",
    "TabuSampler",
    "DzzSampler",
    "DcsSampler",
    "make_sampler",
    "make_rng",
    "run",
    "RunResult",
    "SAMPLER_KINDS",
]

EVENT_JUMP = "jump"
EVENT_FLIP_TAU = "flip_tau"
EVENT_FLIP_THETA = "flip_theta"
EVENT_VELOCITY = "velocity_jump"

_KIND_CODES = {EVENT_JUMP: 0, EVENT_FLIP_TAU: 1, EVENT_FLIP_THETA: 2, EVENT_VELOCITY: 3}
_KIND_NAMES = [EVENT_JUMP, EVENT_FLIP_TAU, EVENT_FLIP_THETA, EVENT_VELOCITY]


@dataclass(frozen=True)
class Event:
    """One transition of the jump process.

    ``gid`` is the move applied (for x-jumps), the pair whose direction
    flipped, or the newly active move after a velocity refresh; it is None
    for plain direction flips.  ``statistic`` is the target's headline
    summary evaluated at the post-event state.
    """

    time: float
    kind: str
    gid: int | None
    statistic: float


@dataclass
class EventTrace:
    """Complete event history of one run, in arrays.

    ``kinds`` holds small integer codes; ``kind_of`` decodes them.  ``gids``
    uses -1 where no move is associated with the event.
    """

    sampler_kind: str
    statistic_name: str
    total_time: float
    initial_state: object
    initial_statistic: float
    times: np.ndarray
    kinds: np.ndarray
    gids: np.ndarray
    statistics: np.ndarray
    final_state: object = None

    @property
    def n_events(self) -> int:
        return len(self.times)

    def kind_of(self, i: int) -> str:
        return _KIND_NAMES[self.kinds[i]]

    def event_counts(self) -> dict[str, int]:
        counts = np.bincount(self.kinds, minlength=len(_KIND_NAMES))
        return {name: int(counts[code]) for name, code in _KIND_CODES.items()}

    def events(self):
        for i in range(self.n_events):
            gid = int(self.gids[i])
            yield Event(
                float(self.times[i]),
                self.kind_of(i),
                None if gid < 0 else gid,
                float(self.statistics[i]),
            )

    def holding_times(self) -> np.ndarray:
        """Intervals between consecutive events (first one from time 0)."""
        return np.diff(self.times, prepend=0.0)

    def statistic_steps(self) -> tuple[np.ndarray, np.ndarray]:
        """Times and values of the piecewise-constant statistic path,
        starting at time 0 with the initial value."""
        t = np.concatenate([[0.0], self.times])
        v = np.concatenate([[self.initial_statistic], self.statistics])
        return t, v


class _TraceBuilder:
    def __init__(self, sampler_kind, statistic_name, initial_state, initial_statistic):
        self.sampler_kind = sampler_kind
        self.statistic_name = statistic_name
        self.initial_state = initial_state
        self.initial_statistic = initial_statistic
        self.times = []
        self.kinds = []
        self.gids = []
        self.stats = []

    def append(self, event: Event):
        self.times.append(event.time)
        self.kinds.append(_KIND_CODES[event.kind])
        self.gids.append(-1 if event.gid is None else event.gid)
        self.stats.append(event.statistic)

    def build(self, total_time, final_state) -> EventTrace:
        return EventTrace(
            sampler_kind=self.sampler_kind,
            statistic_name=self.statistic_name,
            total_time=float(total_time),
            initial_state=self.initial_state,
            initial_statistic=self.initial_statistic,
            times=np.asarray(self.times, dtype=float),
            kinds=np.asarray(self.kinds, dtype=np.int8),
            gids=np.asarray(self.gids, dtype=np.int64),
            statistics=np.asarray(self.stats, dtype=float),
            final_state=final_state,
        )


# ---------------------------------------------------------------------------
# sampler states


@dataclass
class ZanellaState:
    x: object
    t: float = 0.0
    cache: object = None


@dataclass
class TabuState:
    """State plus one availability sign per move and a global direction.

    A move is usable exactly when its sign matches the global direction;
    using it flips its sign, and direction flips resynchronize the pool.
    """

    x: object
    alpha: np.ndarray
    tau: int = 1
    t: float = 0.0
    cache: object = None


@dataclass
class DzzState:
    """State plus one direction sign per inverse pair of moves."""

    x: object
    theta: np.ndarray
    t: float = 0.0
    cache: object = None


@dataclass
class DcsState:
    """State plus a single active move id and a direction sign."""

    x: object
    velocity: int
    tau: int = 1
    t: float = 0.0
    cache: object = None


# ---------------------------------------------------------------------------
# shared numerics


def _pick(weights: np.ndarray, total: float, rng) -> int:
    """Sample an index in proportion to nonnegative weights summing to total."""
    u = rng.random() * total
    cum = np.cumsum(weights)
    idx = int(np.searchsorted(cum, u, side="right"))
    if idx >= len(weights):
        idx = len(weights) - 1
    while weights[idx] == 0.0 and idx > 0:
        idx -= 1
    return idx


def _holding_time(log_total_rate: float, rng) -> float:
    draw = rng.standard_exponential()
    with np.errstate(over="ignore"):
        return float(draw * np.exp(-log_total_rate))


def _require_balanced(g: bal.BalancingFunction):
    if not g.balanced:
        raise DomainError(
            f"balancing function {g.kind!r} does not satisfy the balance "
            "identity and cannot drive a sampler"
        )


class _SamplerBase:
    """Shared construction: target, balancing function, id bookkeeping."""

    kind = "base"

    def __init__(self, target: Target, g: bal.BalancingFunction):
        _require_balanced(g)
        if not target.generators.symmetric:
            raise DomainError("samplers need a symmetric generator set")
        self.target = target
        self.g = g
        gens = list(target.generators)
        self._gids = np.array([gen.gid for gen in gens], dtype=np.int64)
        idx_of = {gen.gid: i for i, gen in enumerate(gens)}
        self._idx_of = idx_of
        # partner[i] = index of the inverse of the generator at index i
        self._partner = np.array(
            [idx_of[gen.inverse_gid] for gen in gens], dtype=np.int64
        )

    def _log_rates(self, x, cache) -> np.ndarray:
        """Log jump rates for every generator, aligned with generator order."""
        return bal.evaluate_log(self.g, self.target.log_ratios(x, cache))

    def _start_x(self, x, rng):
        if x is None:
            x = self.target.initial_state(rng)
        self.target.validate_state(x)
        if not np.isfinite(self.target.log_density(x)):
            raise DomainError("initial state has zero target density")
        return self.target.copy_state(x)


class ZanellaSampler(_SamplerBase):
    """Rejection-free jump sampler over the full move set.

    From state x, move gamma fires at rate g(pi(gamma x) / pi(x)); the
    holding time is exponential at the total rate and the destination is
    chosen in proportion to the individual rates.
    """

    kind = "zanella"

    def init_state(self, x=None, rng=None) -> ZanellaState:
        x = self._start_x(x, rng)
        return ZanellaState(x=x, t=0.0, cache=self.target.make_cache(x))

    def step(self, state: ZanellaState, rng) -> tuple[ZanellaState, Event]:
        log_lam = self._log_rates(state.x, state.cache)
        m = float(np.max(log_lam))
        if m == -np.inf:
            raise AbsorbingStateError("all jump rates vanish at the current state")
        w = np.exp(log_lam - m)
        total = float(w.sum())
        log_rate = m + math.log(total)
        t_new = state.t + _holding_time(log_rate, rng)
        gid = int(self._gids[_pick(w, total, rng)])
        x_new = self.target.apply(gid, state.x)
        cache_new = self.target.advance_cache(state.cache, gid, state.x, x_new)
        new_state = ZanellaState(x=x_new, t=t_new, cache=cache_new)
        return new_state, Event(t_new, EVENT_JUMP, gid, self.target.statistic(x_new))


class TabuSampler(_SamplerBase):
    """Non-reversible sampler that retires each move after use.

    Only moves whose availability sign matches the global direction may
    fire; a used move's sign flips, shrinking the pool.  The total rate is
    the larger of the available and unavailable pools' rates, and with the
    complementary probability the global direction flips instead of
    jumping, making every move available again.  Requires every generator
    to be an involution.
    """

    kind = "tabu"

    def __init__(self, target: Target, g: bal.BalancingFunction):
        super().__init__(target, g)
        if not target.generators.all_involutions:
            raise DomainError(
                "this sampler tracks one availability sign per move and is "
                "only defined for sets of order-2 generators"
            )

    def init_state(self, x=None, alpha=None, tau: int = 1, rng=None) -> TabuState:
        x = self._start_x(x, rng)
        k = len(self._gids)
        if alpha is None:
            alpha = np.full(k, tau, dtype=np.int8)
        else:
            alpha = np.asarray(alpha, dtype=np.int8).copy()
            if alpha.shape != (k,) or not np.all(np.abs(alpha) == 1):
                raise DomainError("alpha must be a +-1 vector over the move set")
        if tau not in (-1, 1):
            raise DomainError("tau must be +-1")
        return TabuState(x=x, alpha=alpha, tau=int(tau), t=0.0, cache=self.target.make_cache(x))

    def step(self, state: TabuState, rng) -> tuple[TabuState, Event]:
        log_lam = self._log_rates(state.x, state.cache)
        m = float(np.max(log_lam))
        if m == -np.inf:
            raise AbsorbingStateError("all jump rates vanish at the current state")
        w = np.exp(log_lam - m)
        avail = state.alpha == state.tau
        s_avail = float(w[avail].sum())
        s_other = float(w[~avail].sum())
        s_max = max(s_avail, s_other)
        if s_max == 0.0:
            raise AbsorbingStateError("all jump rates vanish at the current state")
        log_rate = m + math.log(s_max)
        t_new = state.t + _holding_time(log_rate, rng)
        if rng.random() * s_max < s_avail:
            w_av = np.where(avail, w, 0.0)
            i = _pick(w_av, s_avail, rng)
            gid = int(self._gids[i])
            alpha_new = state.alpha.copy()
            alpha_new[i] = -alpha_new[i]
            x_new = self.target.apply(gid, state.x)
            cache_new = self.target.advance_cache(state.cache, gid, state.x, x_new)
            new_state = TabuState(
                x=x_new, alpha=alpha_new, tau=state.tau, t=t_new, cache=cache_new
            )
            return new_state, Event(t_new, EVENT_JUMP, gid, self.target.statistic(x_new))
        new_state = TabuState(
            x=state.x, alpha=state.alpha, tau=-state.tau, t=t_new, cache=state.cache
        )
        return new_state, Event(
            t_new, EVENT_FLIP_TAU, None, self.target.statistic(state.x)
        )


class DzzSampler(_SamplerBase):
    """Direction-persistent sampler over inverse pairs of moves.

    Each inverse pair keeps a direction sign selecting which member is
    currently forward.  A pair fires at the larger of its forward and
    backward rates (times an optional positive weight); a firing pair
    either applies its forward move or, with the shortfall probability,
    flips its direction sign.
    """

    kind = "dzz"

    def __init__(self, target: Target, g: bal.BalancingFunction, weights=None):
        super().__init__(target, g)
        reduced = target.generators.reduced()
        self.reduced = reduced
        gens = list(reduced)
        self.n_pairs = len(gens)
        self._fwd_idx = np.array([self._idx_of[gen.gid] for gen in gens], dtype=np.int64)
        self._bwd_idx = np.array(
            [self._idx_of[gen.inverse_gid] for gen in gens], dtype=np.int64
        )
        self._pair_gids = np.array([gen.gid for gen in gens], dtype=np.int64)
        if weights is None:
            weights = np.ones(self.n_pairs)
        else:
            weights = np.asarray(weights, dtype=float)
            if weights.shape != (self.n_pairs,) or (weights <= 0).any():
                raise DomainError(
                    f"need {self.n_pairs} positive pair weights, one per inverse pair"
                )
        self.weights = weights

    def init_state(self, x=None, theta=None, rng=None) -> DzzState:
        x = self._start_x(x, rng)
        if theta is None:
            theta = np.ones(self.n_pairs, dtype=np.int8)
        else:
            theta = np.asarray(theta, dtype=np.int8).copy()
            if theta.shape != (self.n_pairs,) or not np.all(np.abs(theta) == 1):
                raise DomainError("theta must be a +-1 vector over the reduced set")
        return DzzState(x=x, theta=theta, t=0.0, cache=self.target.make_cache(x))

    def step(self, state: DzzState, rng) -> tuple[DzzState, Event]:
        log_lam = self._log_rates(state.x, state.cache)
        plus = state.theta == 1
        fwd = np.where(plus, log_lam[self._fwd_idx], log_lam[self._bwd_idx])
        bwd = np.where(plus, log_lam[self._bwd_idx], log_lam[self._fwd_idx])
        m = float(max(np.max(fwd), np.max(bwd)))
        if m == -np.inf:
            raise AbsorbingStateError("all pair rates vanish at the current state")
        w_fwd = self.weights * np.exp(fwd - m)
        w_bwd = self.weights * np.exp(bwd - m)
        cap = np.maximum(w_fwd, w_bwd)
        total = float(cap.sum())
        log_rate = m + math.log(total)
        t_new = state.t + _holding_time(log_rate, rng)
        p = _pick(cap, total, rng)
        if rng.random() * cap[p] < w_fwd[p]:
            idx = self._fwd_idx[p] if state.theta[p] == 1 else self._bwd_idx[p]
            gid = int(self._gids[idx])
            x_new = self.target.apply(gid, state.x)
            cache_new = self.target.advance_cache(state.cache, gid, state.x, x_new)
            new_state = DzzState(x=x_new, theta=state.theta, t=t_new, cache=cache_new)
            return new_state, Event(t_new, EVENT_JUMP, gid, self.target.statistic(x_new))
        theta_new = state.theta.copy()
        theta_new[p] = -theta_new[p]
        new_state = DzzState(x=state.x, theta=theta_new, t=t_new, cache=state.cache)
        return new_state, Event(
            t_new, EVENT_FLIP_THETA, int(self._pair_gids[p]), self.target.statistic(state.x)
        )


class DcsSampler(_SamplerBase):
    """Single-active-move sampler with direction sign and velocity refreshes.

    Only one move (the velocity) is live at a time, applied in the
    direction given by the sign tau.  The chain jumps at the forward rate;
    with the shortfall probability it instead refreshes the velocity,
    drawing a new move w in proportion to psi(w) times the positive part
    of that move's backward-minus-forward rate gap, and flips tau.
    """

    kind = "dcs"

    def __init__(self, target: Target, g: bal.BalancingFunction, psi=None):
        super().__init__(target, g)
        k = len(self._gids)
        if psi is None:
            psi = np.full(k, 1.0 / k)
        else:
            psi = np.asarray(psi, dtype=float)
            if psi.shape != (k,) or (psi <= 0).any():
                raise DomainError("psi must be a positive vector over the move set")
            psi = psi / psi.sum()
        if not np.allclose(psi, psi[self._partner], atol=1e-12):
            raise DomainError("psi must give equal mass to each move and its inverse")
        self.psi = psi

    def init_state(self, x=None, velocity=None, tau: int = 1, rng=None) -> DcsState:
        x = self._start_x(x, rng)
        if tau not in (-1, 1):
            raise DomainError("tau must be +-1")
        if velocity is None:
            if rng is not None:
                velocity = int(self._gids[_pick(self.psi, float(self.psi.sum()), rng)])
            else:
                velocity = int(self._gids[0])
        elif velocity not in self._idx_of:
            raise DomainError(f"velocity {velocity} is not a generator id")
        cache = self.target.make_cache(x)
        log_lam = self._log_rates(x, cache)
        if np.allclose(
            log_lam, log_lam[self._partner], rtol=0.0, atol=1e-12, equal_nan=True
        ):
            warnings.warn(
                "every move is rate-symmetric with its inverse at the initial "
                "state, so velocity refreshes have zero rate there; the active "
                "move can only change if the chain reaches an asymmetric state",
                RuntimeWarning,
                stacklevel=2,
            )
        return DcsState(x=x, velocity=int(velocity), tau=int(tau), t=0.0, cache=cache)

    def _direction_indices(self, velocity: int, tau: int) -> tuple[int, int]:
        i = self._idx_of[velocity]
        return (i, self._partner[i]) if tau == 1 else (self._partner[i], i)

    def step(self, state: DcsState, rng) -> tuple[DcsState, Event]:
        log_lam = self._log_rates(state.x, state.cache)
        fwd_i, bwd_i = self._direction_indices(state.velocity, state.tau)
        d_fwd = float(log_lam[fwd_i])
        d_bwd = float(log_lam[bwd_i])
        m = max(d_fwd, d_bwd)
        if m == -np.inf:
            raise DegenerateVelocityError(
                "both directional rates vanish for the active move"
            )
        w_fwd = math.exp(d_fwd - m)
        cap = 1.0  # max(w_fwd, w_bwd) with one of them scaled to exactly 1
        t_new = state.t + _holding_time(m, rng)
        if rng.random() * cap < w_fwd:
            gid = int(self._gids[fwd_i])
            x_new = self.target.apply(gid, state.x)
            cache_new = self.target.advance_cache(state.cache, gid, state.x, x_new)
            new_state = DcsState(
                x=x_new, velocity=state.velocity, tau=state.tau, t=t_new, cache=cache_new
            )
            return new_state, Event(t_new, EVENT_JUMP, gid, self.target.statistic(x_new))
        # velocity refresh: rate gap of each move under the current tau
        lam_tau = log_lam if state.tau == 1 else log_lam[self._partner]
        lam_mtau = log_lam[self._partner] if state.tau == 1 else log_lam
        m2 = float(np.max(np.maximum(lam_tau, lam_mtau)))
        gap = np.exp(lam_mtau - m2) - np.exp(lam_tau - m2)
        np.maximum(gap, 0.0, out=gap)
        w = self.psi * gap
        total = float(w.sum())
        if total <= 0.0:
            raise DegenerateVelocityError(
                "velocity refresh reached with no admissible new move"
            )
        v_new = int(self._gids[_pick(w, total, rng)])
        new_state = DcsState(
            x=state.x, velocity=v_new, tau=-state.tau, t=t_new, cache=state.cache
        )
        return new_state, Event(
            t_new, EVENT_VELOCITY, v_new, self.target.statistic(state.x)
        )


_SAMPLERS = {
    "zanella": ZanellaSampler,
    "tabu": TabuSampler,
    "dzz": DzzSampler,
    "dcs": DcsSampler,
}

SAMPLER_KINDS = tuple(_SAMPLERS)


def make_sampler(kind: str, target: Target, g, **options):
    """Build a sampler by name.  ``g`` may be a balancing function or its name."""
    if isinstance(g, str):
        g = bal.get(g)
    try:
        cls = _SAMPLERS[kind]
    except KeyError:
        raise DomainError(f"unknown sampler kind {kind!r}; known: {SAMPLER_KINDS}") from None
    return cls(target, g, **options)


def make_rng(seed: int, chain_index: int = 0) -> np.random.Generator:
    """Counter-based generator keyed by (seed, chain index).

    Distinct chain indices give statistically independent streams for the
    same master seed, and the same pair always reproduces the same run.
    """
    return np.random.Generator(np.random.Philox(np.random.SeedSequence([seed, chain_index])))


@dataclass
class RunResult:
    trace: EventTrace
    thinned_times: np.ndarray
    thinned_states: list
    thinned_statistics: np.ndarray
    final_state: object
    n_events: int
    wall_time: float
    stopped_early: bool = False


def run(
    sampler,
    initial,
    total_time: int,
    thinning: int,
    seed: int | None = None,
    chain_index: int = 0,
    rng: np.random.Generator | None = None,
    max_events: int | None = None,
    stop_when: Callable | None = None,
    keep_thinned_states: bool = True,
    debug: bool = False,
    debug_tol: float = 1e-10,
) -> RunResult:
    """Simulate the jump process on [0, total_time] with thinned snapshots.

    ``total_time`` must be a positive integer and a multiple of the
    positive integer ``thinning``; snapshots are taken at 0, thinning,
    2*thinning, ..., total_time, recording the post-event state when a
    snapshot instant coincides with an event.  Given the same seed and
    chain index the run is reproducible event for event.

    ``stop_when`` (called with each post-event sampler state) and
    ``max_events`` end the run early, leaving later snapshot slots empty.
    With ``debug`` every applied move's cached log ratio is compared
    against a from-scratch density difference and a fresh rate vector;
    disagreement beyond ``debug_tol`` raises :class:`ConsistencyError`.
    """
    if int(total_time) != total_time or total_time <= 0:
        raise DomainError("total_time must be a positive integer")
    if int(thinning) != thinning or thinning <= 0:
        raise DomainError("thinning must be a positive integer")
    total_time = int(total_time)
    thinning = int(thinning)
    if total_time % thinning != 0:
        raise DomainError("total_time must be a multiple of thinning")
    if rng is None:
        if seed is None:
            raise DomainError("give either an rng or a seed")
        rng = make_rng(seed, chain_index)

    target = sampler.target
    horizon = float(total_time)
    grid = np.arange(0, total_time + thinning, thinning, dtype=float)
    thin_states: list = []
    thin_stats: list = []

    def snapshot(st):
        if keep_thinned_states:
            thin_states.append(target.copy_state(st.x))
        thin_stats.append(target.statistic(st.x))

    state = initial
    builder = _TraceBuilder(
        sampler.kind, target.statistic_name, target.copy_state(state.x),
        target.statistic(state.x),
    )
    snapshot(state)
    k = 1
    n_events = 0
    stopped = False
    start = _time.perf_counter()
    while state.t < horizon:
        if max_events is not None and n_events >= max_events:
            stopped = True
            break
        new_state, event = sampler.step(state, rng)
        t_new = event.time
        while k < len(grid) and grid[k] < t_new:
            snapshot(state)
            k += 1
        if t_new > horizon:
            break
        if debug and event.kind == EVENT_JUMP:
            _debug_check(target, state, new_state, event.gid, debug_tol)
        builder.append(event)
        n_events += 1
        state = new_state
        if k < len(grid) and grid[k] == t_new:
            snapshot(state)
            k += 1
        if stop_when is not None and stop_when(state):
            stopped = True
            break
    if not stopped:
        while k < len(grid):
            snapshot(state)
            k += 1
    wall = _time.perf_counter() - start
    trace = builder.build(horizon, target.copy_state(state.x))
    return RunResult(
        trace=trace,
        thinned_times=grid[: len(thin_stats)],
        thinned_states=thin_states,
        thinned_statistics=np.asarray(thin_stats, dtype=float),
        final_state=state,
        n_events=n_events,
        wall_time=wall,
        stopped_early=stopped,
    )


def _debug_check(target, old_state, new_state, gid, tol):
    used = float(
        target.log_ratios(old_state.x, old_state.cache)[
            list(target.generators.gids).index(gid)
        ]
    )
    fresh_ratio = target.log_ratio(old_state.x, gid)
    direct = target.log_density(new_state.x) - target.log_density(old_state.x)
    worst = max(abs(used - direct), abs(fresh_ratio - direct))
    if not worst <= tol:
        raise ConsistencyError(
            f"move {gid}: cached log ratio {used:.15g}, from-scratch ratio "
            f"{fresh_ratio:.15g}, density difference {direct:.15g} "
            f"(disagreement {worst:.3e} > {tol:g})"
        )
