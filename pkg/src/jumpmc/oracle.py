"""Exact verification on fully enumerated state spaces.

For desk-sized targets every check is done against the complete rate
matrix of the simulated process: enumerate the (possibly lifted) state
space, assemble the generator Q entry by entry from the same rate
formulas the samplers use, and test stationarity, detailed balance, or
the skew counterpart under the relevant sign-flip involution.

Lifted processes freeze parts of their auxiliary variables in symmetric
situations (for example, direction signs never flip when forward and
backward rates agree everywhere), which makes Q reducible even though the
state marginal is still correct.  :func:`stationary_distribution` handles
that by solving each closed communicating class separately and weighting
the pieces by the designated reference law.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from . import balancing as bal
from .errors import DomainError, ReducibleChainError, SizeCapError, ToolkitError
from .statespace import Target

__all__ = [
    "EnumeratedSpace",
    "enumerate_space",
    "build_rate_matrix",
    "single_pair_rate_matrix",
    "stationary_distribution",
    "check_stationarity",
    "check_detailed_balance",
    "check_skew_detailed_balance",
    "jump_measure",
    "generator_expectation",
    "aux_uniformity",
    "CheckResult",
    "verify_sampler",
    "closed_classes",
]


@dataclass
class CheckResult:
    """Outcome of one exact check."""

    name: str
    passed: bool
    max_violation: float
    size: int
    detail: str = ""

    def __str__(self):
        mark = "pass" if self.passed else "FAIL"
        return f"[{mark}] {self.name}: max violation {self.max_violation:.3e} ({self.detail})"


@dataclass
class EnumeratedSpace:
    """A fully listed (possibly lifted) state space.

    ``rows`` holds one tuple per state: ``(base_index,)`` for the plain
    sampler, ``(base_index, alpha, tau)``, ``(base_index, theta)`` or
    ``(base_index, velocity_gid, tau)`` for the lifted ones, with sign
    vectors stored as tuples.  ``reference`` is the designated stationary
    law: the target marginal times independent uniform (or psi) auxiliary
    factors.  ``involutions`` maps names to row permutations.
    """

    sampler_kind: str
    target: Target
    rows: list
    index: dict
    reference: np.ndarray
    base_states: list
    base_probs: np.ndarray
    base_of_row: np.ndarray
    involutions: dict[str, np.ndarray] = field(default_factory=dict)
    psi: np.ndarray | None = None
    weights: np.ndarray | None = None
    pair_gids: list | None = None

    @property
    def size(self) -> int:
        return len(self.rows)

    def x_marginal(self, pi: np.ndarray) -> np.ndarray:
        """Collapse a law on the lifted space down to the base states."""
        out = np.zeros(len(self.base_states))
        np.add.at(out, self.base_of_row, pi)
        return out


def _base_enumeration(target: Target, size_cap: int):
    states = target.enumerate_states()
    if len(states) > size_cap:
        raise SizeCapError(f"{len(states)} base states exceeds the cap {size_cap}")
    log_p = np.array([target.log_density(s) for s in states])
    keep = np.isfinite(log_p)
    states = [s for s, k in zip(states, keep) if k]
    log_p = log_p[keep]
    if not states:
        raise DomainError("no state has positive density")
    log_p = log_p - log_p.max()
    p = np.exp(log_p)
    p /= p.sum()
    key_of = {target.state_key(s): i for i, s in enumerate(states)}
    if len(key_of) != len(states):
        raise DomainError("state_key is not injective on the enumerated states")
    return states, p, key_of


def _sign_tuples(k: int):
    return [tuple(bits) for bits in itertools.product((1, -1), repeat=k)]


def enumerate_space(
    sampler_kind: str,
    target: Target,
    psi=None,
    weights=None,
    size_cap: int = 200_000,
) -> EnumeratedSpace:
    """List every state of the chosen sampler's process on this target.

    Base states with zero density are dropped; moves into them carry zero
    rate, so they are unreachable anyway.
    """
    base_states, base_probs, key_of = _base_enumeration(target, size_cap)
    n_base = len(base_states)
    gens = list(target.generators)
    k = len(gens)

    rows: list = []
    reference: list[float] = []
    involutions: dict[str, np.ndarray] = {}
    psi_arr = None
    weights_arr = None
    pair_gids = None

    if sampler_kind == "zanella":
        rows = [(i,) for i in range(n_base)]
        reference = list(base_probs)
    elif sampler_kind == "tabu":
        if not target.generators.all_involutions:
            raise DomainError("the tabu process needs order-2 generators")
        signs = _sign_tuples(k)
        total = n_base * len(signs) * 2
        if total > size_cap:
            raise SizeCapError(f"{total} lifted states exceeds the cap {size_cap}")
        for i in range(n_base):
            for alpha in signs:
                for tau in (1, -1):
                    rows.append((i, alpha, tau))
                    reference.append(base_probs[i] / len(signs) / 2.0)
    elif sampler_kind == "dzz":
        reduced = target.generators.reduced()
        pair_gids = [g.gid for g in reduced]
        n_pairs = len(pair_gids)
        signs = _sign_tuples(n_pairs)
        total = n_base * len(signs)
        if total > size_cap:
            raise SizeCapError(f"{total} lifted states exceeds the cap {size_cap}")
        for i in range(n_base):
            for theta in signs:
                rows.append((i, theta))
                reference.append(base_probs[i] / len(signs))
        if weights is None:
            weights_arr = np.ones(n_pairs)
        else:
            weights_arr = np.asarray(weights, dtype=float)
            if weights_arr.shape != (n_pairs,) or (weights_arr <= 0).any():
                raise DomainError(f"need {n_pairs} positive pair weights")
    elif sampler_kind == "dcs":
        if psi is None:
            psi_arr = np.full(k, 1.0 / k)
        else:
            psi_arr = np.asarray(psi, dtype=float)
            psi_arr = psi_arr / psi_arr.sum()
        total = n_base * k * 2
        if total > size_cap:
            raise SizeCapError(f"{total} lifted states exceeds the cap {size_cap}")
        for i in range(n_base):
            for gi, gen in enumerate(gens):
                for tau in (1, -1):
                    rows.append((i, gen.gid, tau))
                    reference.append(base_probs[i] * psi_arr[gi] / 2.0)
    else:
        raise DomainError(f"unknown sampler kind {sampler_kind!r}")

    index = {row: r for r, row in enumerate(rows)}
    base_of_row = np.array([row[0] for row in rows], dtype=np.int64)

    if sampler_kind == "tabu":
        involutions["direction"] = np.array(
            [index[(i, alpha, -tau)] for (i, alpha, tau) in rows], dtype=np.int64
        )
    elif sampler_kind == "dzz":
        for p, gid in enumerate(pair_gids):
            perm = []
            for (i, theta) in rows:
                flipped = list(theta)
                flipped[p] = -flipped[p]
                perm.append(index[(i, tuple(flipped))])
            involutions[f"pair{gid}"] = np.array(perm, dtype=np.int64)
    elif sampler_kind == "dcs":
        involutions["direction"] = np.array(
            [index[(i, v, -tau)] for (i, v, tau) in rows], dtype=np.int64
        )

    space = EnumeratedSpace(
        sampler_kind=sampler_kind,
        target=target,
        rows=rows,
        index=index,
        reference=np.asarray(reference, dtype=float),
        base_states=base_states,
        base_probs=base_probs,
        base_of_row=base_of_row,
        involutions=involutions,
        psi=psi_arr,
        weights=weights_arr,
        pair_gids=pair_gids,
    )
    return space


def _base_rates(space: EnumeratedSpace, g: bal.BalancingFunction):
    """Per base state: jump rate of every generator (iteration order) and
    the base index reached, -1 for zero-density destinations."""
    target = space.target
    gens = list(target.generators)
    key_of = {target.state_key(s): i for i, s in enumerate(space.base_states)}
    rates = np.zeros((len(space.base_states), len(gens)))
    dest = np.full((len(space.base_states), len(gens)), -1, dtype=np.int64)
    for i, x in enumerate(space.base_states):
        log_lam = bal.evaluate_log(g, target.log_ratios(x))
        rates[i] = np.exp(log_lam)
        for j, gen in enumerate(gens):
            if rates[i, j] > 0.0:
                key = target.state_key(target.apply(gen.gid, x))
                if key not in key_of:
                    raise DomainError(
                        "a positive-rate move leaves the enumerated support; "
                        "the support is not closed under the move set"
                    )
                dest[i, j] = key_of[key]
    return rates, dest


def build_rate_matrix(
    space: EnumeratedSpace,
    g: bal.BalancingFunction,
    include_compensators: bool = True,
) -> np.ndarray:
    """Dense generator matrix of the simulated process on this space.

    Off-diagonal entries are transition rates; diagonal entries make rows
    sum to zero.  ``include_compensators=False`` drops the direction-flip
    rates that restore stationarity for the lifted samplers (useful as a
    negative control; the plain sampler has none).
    """
    target = space.target
    gens = list(target.generators)
    idx_of = {gen.gid: j for j, gen in enumerate(gens)}
    partner = np.array([idx_of[gen.inverse_gid] for gen in gens], dtype=np.int64)
    rates, dest = _base_rates(space, g)
    n = space.size
    Q = np.zeros((n, n))
    kind = space.sampler_kind

    if kind == "zanella":
        for r, (i,) in enumerate(space.rows):
            for j in range(len(gens)):
                if rates[i, j] > 0.0:
                    Q[r, space.index[(dest[i, j],)]] += rates[i, j]

    elif kind == "tabu":
        for r, (i, alpha, tau) in enumerate(space.rows):
            avail_total = 0.0
            other_total = 0.0
            for j, gen in enumerate(gens):
                if alpha[j] == tau:
                    avail_total += rates[i, j]
                    if rates[i, j] > 0.0:
                        flipped = list(alpha)
                        flipped[j] = -flipped[j]
                        row2 = (dest[i, j], tuple(flipped), tau)
                        Q[r, space.index[row2]] += rates[i, j]
                else:
                    other_total += rates[i, j]
            if include_compensators:
                comp = max(0.0, other_total - avail_total)
                if comp > 0.0:
                    Q[r, space.index[(i, alpha, -tau)]] += comp

    elif kind == "dzz":
        pair_pos = [idx_of[gid] for gid in space.pair_gids]
        for r, (i, theta) in enumerate(space.rows):
            for p, j in enumerate(pair_pos):
                fwd_j = j if theta[p] == 1 else partner[j]
                bwd_j = partner[fwd_j]
                w = space.weights[p]
                lam_f = rates[i, fwd_j]
                lam_b = rates[i, bwd_j]
                if lam_f > 0.0:
                    Q[r, space.index[(dest[i, fwd_j], theta)]] += w * lam_f
                if include_compensators:
                    comp = w * max(0.0, lam_b - lam_f)
                    if comp > 0.0:
                        flipped = list(theta)
                        flipped[p] = -flipped[p]
                        Q[r, space.index[(i, tuple(flipped))]] += comp

    elif kind == "dcs":
        k = len(gens)
        pos_of_gid = {gen.gid: j for j, gen in enumerate(gens)}
        for r, (i, v, tau) in enumerate(space.rows):
            vi = pos_of_gid[v]
            delta_tau = rates[i] if tau == 1 else rates[i][partner]
            delta_mtau = rates[i][partner] if tau == 1 else rates[i]
            gap = np.maximum(0.0, delta_mtau - delta_tau)
            fwd_j = vi if tau == 1 else partner[vi]
            lam_f = rates[i, fwd_j]
            if lam_f > 0.0:
                Q[r, space.index[(dest[i, fwd_j], v, tau)]] += lam_f
            rho_v = gap[vi]
            if include_compensators and rho_v > 0.0:
                z = float(space.psi @ gap)
                for wj, gen in enumerate(gens):
                    wgt = space.psi[wj] * gap[wj]
                    if wgt > 0.0:
                        Q[r, space.index[(i, gen.gid, -tau)]] += rho_v * wgt / z
    else:
        raise DomainError(f"unknown sampler kind {kind!r}")

    np.fill_diagonal(Q, np.diag(Q) - Q.sum(axis=1))
    return Q


def single_pair_rate_matrix(
    space: EnumeratedSpace,
    g: bal.BalancingFunction,
    pair_gid: int,
    include_compensators: bool = True,
) -> np.ndarray:
    """Generator containing only one inverse pair's moves and flips.

    The full direction-persistent process is the weighted sum of these
    over all pairs; each summand is what satisfies the skew conditions
    under its own sign flip.
    """
    if space.sampler_kind != "dzz":
        raise DomainError("single-pair matrices only exist for the dzz space")
    target = space.target
    gens = list(target.generators)
    idx_of = {gen.gid: j for j, gen in enumerate(gens)}
    partner = np.array([idx_of[gen.inverse_gid] for gen in gens], dtype=np.int64)
    rates, dest = _base_rates(space, g)
    p = space.pair_gids.index(pair_gid)
    j = idx_of[pair_gid]
    n = space.size
    Q = np.zeros((n, n))
    w = space.weights[p]
    for r, (i, theta) in enumerate(space.rows):
        fwd_j = j if theta[p] == 1 else partner[j]
        bwd_j = partner[fwd_j]
        lam_f = rates[i, fwd_j]
        lam_b = rates[i, bwd_j]
        if lam_f > 0.0:
            Q[r, space.index[(dest[i, fwd_j], theta)]] += w * lam_f
        if include_compensators:
            comp = w * max(0.0, lam_b - lam_f)
            if comp > 0.0:
                flipped = list(theta)
                flipped[p] = -flipped[p]
                Q[r, space.index[(i, tuple(flipped))]] += comp
    np.fill_diagonal(Q, np.diag(Q) - Q.sum(axis=1))
    return Q


# ---------------------------------------------------------------------------
# stationary law


def closed_classes(Q: np.ndarray) -> tuple[list[np.ndarray], list[np.ndarray]]:
    """Communicating classes of the support digraph, split into closed
    (no positive rate leaving) and open."""
    support = csr_matrix((Q > 0.0).astype(np.int8))
    n_comp, labels = connected_components(support, directed=True, connection="strong")
    closed, open_ = [], []
    for c in range(n_comp):
        idx = np.flatnonzero(labels == c)
        outside = np.ones(Q.shape[0], dtype=bool)
        outside[idx] = False
        if np.any(Q[np.ix_(idx, outside)] > 0.0):
            open_.append(idx)
        else:
            closed.append(idx)
    return closed, open_


def _solve_null(Q: np.ndarray, tol: float) -> np.ndarray:
    n = Q.shape[0]
    if n == 1:
        return np.ones(1)
    A = np.vstack([Q.T, np.ones((1, n))])
    b = np.zeros(n + 1)
    b[-1] = 1.0
    x, *_ = np.linalg.lstsq(A, b, rcond=None)
    x = np.clip(x, 0.0, None)
    s = x.sum()
    if s <= 0.0:
        raise ToolkitError("stationary solve produced a zero vector")
    x = x / s
    scale = max(1.0, float(np.abs(Q).max()))
    resid = float(np.abs(x @ Q).max()) / scale
    if resid > tol:
        raise ToolkitError(f"stationary residual {resid:.3e} exceeds {tol:g}")
    return x


def stationary_distribution(
    Q: np.ndarray, reference: np.ndarray | None = None, tol: float = 1e-10
) -> np.ndarray:
    """Stationary law of the generator Q with residual at most ``tol``.

    Irreducible generators are solved directly.  When Q has several closed
    communicating classes, a ``reference`` law (positive on all states)
    selects how much mass each class carries: within-class laws are exact
    stationary solves, scaled by the reference mass of the class.  This is
    the right assembly whenever the reference is itself stationary for Q,
    because a positive stationary law forbids transient states and fixes
    exactly the per-class masses.  Without a reference a reducible Q
    raises :class:`ReducibleChainError`.
    """
    closed, open_ = closed_classes(Q)
    if len(closed) == 1 and not open_:
        return _solve_null(Q, tol)
    if reference is None:
        raise ReducibleChainError(
            f"generator has {len(closed)} closed classes and "
            f"{len(open_)} open ones; supply a reference law to weight them",
            classes=closed + open_,
        )
    if open_:
        raise ReducibleChainError(
            "generator has transient states, so no positive stationary law "
            "exists and reference weighting does not apply",
            classes=closed + open_,
        )
    if (np.asarray(reference) <= 0).any():
        raise DomainError("the reference law must be positive everywhere")
    out = np.zeros(Q.shape[0])
    for idx in closed:
        sub = Q[np.ix_(idx, idx)]
        out[idx] = reference[idx].sum() * _solve_null(sub, tol)
    scale = max(1.0, float(np.abs(Q).max()))
    resid = float(np.abs(out @ Q).max()) / scale
    if resid > tol:
        raise ToolkitError(f"assembled stationary residual {resid:.3e} exceeds {tol:g}")
    return out


# ---------------------------------------------------------------------------
# checks


def _mixed_violation(lhs: np.ndarray, rhs: np.ndarray) -> float:
    denom = np.maximum(1.0, np.maximum(np.abs(lhs), np.abs(rhs)))
    return float(np.max(np.abs(lhs - rhs) / denom)) if lhs.size else 0.0


def check_stationarity(
    Q: np.ndarray, pi: np.ndarray, tol: float = 1e-10, name: str = "stationarity"
) -> CheckResult:
    """Max entry of pi Q, normalized by the largest rate."""
    scale = max(1.0, float(np.abs(Q).max()))
    viol = float(np.abs(pi @ Q).max()) / scale
    return CheckResult(name, viol <= tol, viol, Q.shape[0], f"tol {tol:g}")


def check_detailed_balance(
    Q: np.ndarray, pi: np.ndarray, tol: float = 1e-12
) -> CheckResult:
    """pi(u) q(u, v) = pi(v) q(v, u) over all pairs."""
    flow = pi[:, None] * Q
    off = ~np.eye(Q.shape[0], dtype=bool)
    viol = _mixed_violation(flow[off], flow.T[off])
    return CheckResult("detailed_balance", viol <= tol, viol, Q.shape[0], f"tol {tol:g}")


def check_skew_detailed_balance(
    Q: np.ndarray,
    pi: np.ndarray,
    involution: np.ndarray,
    tol: float = 1e-12,
    name: str = "",
) -> list[CheckResult]:
    """The three exactness conditions under a state-space involution S.

    1. ``measure_symmetry``: pi(S(u)) = pi(u).
    2. ``skew_pair``: pi(u) q(u, v) = pi(S(v)) q(S(v), S(u)) for u != v.
    3. ``semi_local_balance``: total exit rates match, Lambda(u) =
       Lambda(S(u)).

    Together with S being an involution these make pi stationary for Q.
    The compensating flip edges go from u to S(u) and satisfy condition 2
    automatically; removing them breaks condition 3.
    """
    S = np.asarray(involution)
    n = Q.shape[0]
    if not np.array_equal(S[S], np.arange(n)):
        raise DomainError("the supplied map is not an involution")
    prefix = f"{name}_" if name else ""
    out = []

    viol1 = _mixed_violation(pi, pi[S])
    out.append(
        CheckResult(f"{prefix}measure_symmetry", viol1 <= tol, viol1, n, f"tol {tol:g}")
    )

    flow = pi[:, None] * Q
    # pi(S(v)) q(S(v), S(u)) arranged as a matrix over (u, v)
    skew_flow = (pi[S][:, None] * Q[np.ix_(S, S)]).T
    off = ~np.eye(n, dtype=bool)
    viol2 = _mixed_violation(flow[off], skew_flow[off])
    out.append(CheckResult(f"{prefix}skew_pair", viol2 <= tol, viol2, n, f"tol {tol:g}"))

    lam = -np.diag(Q)
    viol3 = _mixed_violation(lam, lam[S])
    out.append(
        CheckResult(
            f"{prefix}semi_local_balance", viol3 <= tol, viol3, n, f"tol {tol:g}"
        )
    )
    return out


def jump_measure(
    target: Target, g: bal.BalancingFunction, size_cap: int = 200_000
):
    """Stationary law of the embedded jump chain of the plain sampler.

    Returns ``(space, pi_jump, ratio)`` where ``pi_jump`` is proportional
    to pi(x) * Lambda(x) over the enumerated base states and ``ratio`` is
    the per-state factor pi_jump / pi (normalized total exit rate).  With a
    non-balanced function this is the measure the jump chain actually
    targets, which is how sampling under g(t) = t is compared against the
    balanced kinds.
    """
    space = enumerate_space("zanella", target, size_cap=size_cap)
    rates, _ = _base_rates(space, g)
    lam = rates.sum(axis=1)
    if (lam <= 0.0).any():
        raise DomainError("a state with zero exit rate has no jump-chain law")
    pij = space.base_probs * lam
    total = pij.sum()
    pij = pij / total
    ratio = pij / space.base_probs
    return space, pij, ratio


def generator_expectation(Q: np.ndarray, pi: np.ndarray, f_values: np.ndarray) -> float:
    """pi' (Q f): zero for every f exactly when pi is stationary."""
    return float(pi @ (Q @ np.asarray(f_values, dtype=float)))


def aux_uniformity(space: EnumeratedSpace, pi: np.ndarray) -> CheckResult:
    """Worst deviation of any auxiliary-variable marginal from its design
    law (uniform signs; psi for the active-move id)."""
    worst = 0.0
    detail = []
    kind = space.sampler_kind
    if kind == "zanella":
        return CheckResult("aux_uniformity", True, 0.0, space.size, "no auxiliaries")
    if kind == "tabu":
        k = len(list(space.target.generators))
        for j in range(k):
            mass = sum(p for (row, p) in zip(space.rows, pi) if row[1][j] == 1)
            worst = max(worst, abs(mass - 0.5))
        mass = sum(p for (row, p) in zip(space.rows, pi) if row[2] == 1)
        worst = max(worst, abs(mass - 0.5))
        detail.append("alpha components and tau vs 1/2")
    elif kind == "dzz":
        for p_i in range(len(space.pair_gids)):
            mass = sum(p for (row, p) in zip(space.rows, pi) if row[1][p_i] == 1)
            worst = max(worst, abs(mass - 0.5))
        detail.append("theta components vs 1/2")
    elif kind == "dcs":
        gens = list(space.target.generators)
        for gi, gen in enumerate(gens):
            mass = sum(p for (row, p) in zip(space.rows, pi) if row[1] == gen.gid)
            worst = max(worst, abs(mass - space.psi[gi]))
        mass = sum(p for (row, p) in zip(space.rows, pi) if row[2] == 1)
        worst = max(worst, abs(mass - 0.5))
        detail.append("velocity vs psi, tau vs 1/2")
    return CheckResult("aux_uniformity", worst <= 1e-10, worst, space.size, "; ".join(detail))


def verify_sampler(
    sampler_kind: str,
    target: Target,
    g: bal.BalancingFunction,
    psi=None,
    weights=None,
    size_cap: int = 200_000,
    tol_stationary: float = 1e-10,
    tol_balance: float = 1e-12,
    include_compensators: bool = True,
) -> list[CheckResult]:
    """Run every applicable exact check for one sampler on one target.

    ``include_compensators=False`` is the negative control: the lifted
    samplers' direction-flip rates are dropped, after which semi-local
    balance and stationarity are expected to fail.
    """
    space = enumerate_space(sampler_kind, target, psi=psi, weights=weights, size_cap=size_cap)
    Q = build_rate_matrix(space, g, include_compensators=include_compensators)
    results: list[CheckResult] = []

    closed, open_ = closed_classes(Q)
    reducible = len(closed) > 1 or bool(open_)
    if reducible:
        results.append(
            CheckResult(
                "reducibility",
                True,
                float(len(closed)),
                space.size,
                f"{len(closed)} closed classes (auxiliaries freeze); "
                "stationary law assembled with reference weights",
            )
        )
    results.append(
        check_stationarity(
            Q, space.reference, tol=tol_stationary, name="reference_stationarity"
        )
    )
    try:
        pi = stationary_distribution(Q, reference=space.reference, tol=tol_stationary)
    except (ReducibleChainError, ToolkitError) as err:
        results.append(
            CheckResult(
                "stationary_vs_reference", False, math.inf, space.size, str(err)
            )
        )
    else:
        tv = 0.5 * float(np.abs(pi - space.reference).sum())
        results.append(
            CheckResult(
                "stationary_vs_reference",
                tv <= tol_stationary,
                tv,
                space.size,
                f"total variation, tol {tol_stationary:g}",
            )
        )
        results.append(aux_uniformity(space, pi))

    if sampler_kind == "zanella":
        results.append(check_detailed_balance(Q, space.reference, tol=tol_balance))
    elif sampler_kind == "tabu":
        results.extend(
            check_skew_detailed_balance(
                Q, space.reference, space.involutions["direction"], tol=tol_balance
            )
        )
    elif sampler_kind == "dzz":
        for gid in space.pair_gids:
            Qp = single_pair_rate_matrix(
                space, g, gid, include_compensators=include_compensators
            )
            results.extend(
                check_skew_detailed_balance(
                    Qp,
                    space.reference,
                    space.involutions[f"pair{gid}"],
                    tol=tol_balance,
                    name=f"pair{gid}",
                )
            )
    elif sampler_kind == "dcs":
        results.extend(
            check_skew_detailed_balance(
                Q, space.reference, space.involutions["direction"], tol=tol_balance
            )
        )
    return results
