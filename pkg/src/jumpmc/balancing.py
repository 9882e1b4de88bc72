"""Balancing functions used to turn density ratios into jump rates.

A balancing function g maps a positive density ratio t to a rate multiplier
and satisfies the identity g(t) = t * g(1/t).  That identity is what makes
the resulting jump chains reversible (or skew-reversible) with respect to
the target.  The classical choices are provided by name:

``sqrt``        g(t) = sqrt(t)
``barker``      g(t) = t / (1 + t)
``metropolis``  g(t) = min(1, t)
``global``      g(t) = t           (not balanced; comparison use only)

All sampler-facing evaluation happens in the log domain so that extreme
density ratios do not overflow.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, NamedTuple

import numpy as np

from .errors import DomainError

__all__ = [
    "BalancingFunction",
    "BalanceCheck",
    "get",
    "available_kinds",
    "make_custom",
    "evaluate",
    "evaluate_log",
    "check_balance",
]


@dataclass(frozen=True)
class BalancingFunction:
    """A named map from positive density ratios to rate multipliers.

    Parameters
    ----------
    kind:
        Short name used in configs and reports.
    balanced:
        True when the function satisfies g(t) = t * g(1/t).  Samplers refuse
        non-balanced functions; jump-measure comparisons accept them.
    """

    kind: str
    balanced: bool
    _fn: Callable[[np.ndarray], np.ndarray] = field(repr=False)
    _log_fn: Callable[[np.ndarray], np.ndarray] = field(repr=False)

    def __call__(self, t):
        return evaluate(self, t)


class BalanceCheck(NamedTuple):
    passed: bool
    max_violation: float
    worst_t: float


def _sqrt_log(x):
    return 0.5 * x


def _barker_log(x):
    out = np.empty_like(x)
    pos = x >= 0
    out[pos] = -np.log1p(np.exp(-x[pos]))
    out[~pos] = x[~pos] - np.log1p(np.exp(x[~pos]))
    return out


def _metropolis_log(x):
    return np.minimum(0.0, x)


def _global_log(x):
    return x.copy()


_REGISTRY: dict[str, BalancingFunction] = {
    "sqrt": BalancingFunction("sqrt", True, np.sqrt, _sqrt_log),
    "barker": BalancingFunction("barker", True, lambda t: t / (1.0 + t), _barker_log),
    "metropolis": BalancingFunction(
        "metropolis", True, lambda t: np.minimum(1.0, t), _metropolis_log
    ),
    "global": BalancingFunction("global", False, lambda t: t.copy(), _global_log),
}

BALANCED_KINDS = ("sqrt", "barker", "metropolis")


def available_kinds() -> tuple[str, ...]:
    """Names accepted by :func:`get`."""
    return tuple(_REGISTRY)


def get(kind: str) -> BalancingFunction:
    """Look up a balancing function by name."""
    try:
        return _REGISTRY[kind]
    except KeyError:
        raise DomainError(
            f"unknown balancing function {kind!r}; known: {sorted(_REGISTRY)}"
        ) from None


def make_custom(
    kind: str,
    fn: Callable[[float], float],
    log_fn: Callable[[float], float] | None = None,
    claims_balanced: bool = True,
    check_points: int = 200,
    tol: float = 1e-8,
    seed: int = 0,
) -> BalancingFunction:
    """Wrap a user-supplied evaluator as a balancing function.

    When ``claims_balanced`` is true the identity g(t) = t * g(1/t) is
    verified on a log-uniform sample of ratios and a :class:`DomainError`
    is raised if it fails, so an unbalanced evaluator cannot be smuggled
    into the samplers.  Without ``log_fn`` the log-domain path goes through
    exp/log and large ratios may overflow.
    """

    vec_fn = np.vectorize(fn, otypes=[float])
    if log_fn is None:

        def _log(x):
            with np.errstate(divide="ignore"):
                return np.log(vec_fn(np.exp(x)))

    else:
        _log = np.vectorize(log_fn, otypes=[float])
    g = BalancingFunction(kind, claims_balanced, vec_fn, _log)
    if claims_balanced:
        rng = np.random.default_rng(seed)
        ts = np.exp(rng.uniform(-12.0, 12.0, size=check_points))
        result = check_balance(g, ts, tol=tol)
        if not result.passed:
            raise DomainError(
                f"custom function {kind!r} claims balance but violates the "
                f"identity by {result.max_violation:.3e} at t={result.worst_t:.6g}"
            )
    return g


def _prepare(value, name):
    arr = np.asarray(value, dtype=float)
    scalar = arr.ndim == 0
    arr = np.atleast_1d(arr)
    if np.isnan(arr).any():
        raise DomainError(f"{name} contains NaN")
    return arr, scalar


def evaluate(g: BalancingFunction, t):
    """Evaluate g at positive ratio(s) t.

    Accepts scalars or arrays.  Nonpositive or non-finite entries raise
    :class:`DomainError`.
    """
    arr, scalar = _prepare(t, "ratio")
    if (arr <= 0).any() or np.isinf(arr).any():
        raise DomainError("ratios must be positive finite reals")
    out = g._fn(arr)
    return float(out[0]) if scalar else out


def evaluate_log(g: BalancingFunction, log_t):
    """Evaluate log g(t) given log t, working entirely in the log domain.

    ``log_t = -inf`` is accepted as the blocked-move limit t -> 0+ (the
    result is ``-inf`` for every registered kind except ``metropolis`` and
    ``barker``, which still return their finite limits' logs, i.e. ``-inf``
    as well since g(0+) = 0).  ``+inf`` and NaN raise :class:`DomainError`.
    """
    arr, scalar = _prepare(log_t, "log ratio")
    if (arr == np.inf).any():
        raise DomainError("log ratio +inf: source state has zero density")
    with np.errstate(over="ignore", invalid="ignore"):
        out = g._log_fn(arr)
    out = np.where(arr == -np.inf, -np.inf, out)
    return float(out[0]) if scalar else out


def check_balance(g: BalancingFunction, ts, tol: float = 1e-10) -> BalanceCheck:
    """Test the identity g(t) = t * g(1/t) on the given ratios.

    The violation at each t is |g(t) - t g(1/t)| / max(1, g(t)); the check
    passes when every violation is at most ``tol``.
    """
    arr, _ = _prepare(ts, "ratio")
    if (arr <= 0).any() or np.isinf(arr).any():
        raise DomainError("ratios must be positive finite reals")
    gt = g._fn(arr)
    reflected = arr * g._fn(1.0 / arr)
    viol = np.abs(gt - reflected) / np.maximum(1.0, gt)
    worst = int(np.argmax(viol))
    max_violation = float(viol[worst])
    return BalanceCheck(bool(max_violation <= tol), max_violation, float(arr[worst]))
