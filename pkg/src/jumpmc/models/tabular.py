"""One-dimensional tabulated targets on {0, ..., n-1} with step moves.

These are the workhorse test targets: small enough to enumerate exactly,
with a genuine boundary (steps off either end have zero density, hence
zero rate).  States are plain Python ints.
"""

from __future__ import annotations

import numpy as np

from ..errors import DomainError
from ..statespace import Target, plus_minus_generators

__all__ = [
    "TabularTarget",
    "beta_binomial_target",
    "triangle_target",
    "three_state_path",
]

STEP_UP = 0
STEP_DOWN = 1


class TabularTarget(Target):
    """Arbitrary positive weights on a path graph.

    Generator 0 steps up, generator 1 steps down; they are mutual inverses
    of infinite order (the state space, not the group, imposes the ends).
    """

    statistic_name = "state_index"

    def __init__(self, log_weights, name: str = "tabular"):
        lw = np.asarray(log_weights, dtype=float)
        if lw.ndim != 1 or lw.size < 2:
            raise DomainError("need a 1-d table with at least two states")
        if not np.all(np.isfinite(lw)):
            raise DomainError("log weights must be finite")
        self.log_weights = lw
        self.n_states = lw.size
        self.name = name
        self.generators = plus_minus_generators(1, labels=["step"])

    def log_density(self, x) -> float:
        if 0 <= x < self.n_states:
            return float(self.log_weights[x])
        return -np.inf

    def apply(self, gid: int, x):
        self.generators.get(gid)
        return x + 1 if gid == STEP_UP else x - 1

    def log_ratio(self, x, gid: int) -> float:
        if not 0 <= x < self.n_states:
            raise DomainError("log_ratio evaluated at a zero-density state")
        y = self.apply(gid, x)
        if not 0 <= y < self.n_states:
            return -np.inf
        return float(self.log_weights[y] - self.log_weights[x])

    def log_ratios(self, x, cache=None) -> np.ndarray:
        return np.array([self.log_ratio(x, STEP_UP), self.log_ratio(x, STEP_DOWN)])

    def validate_state(self, x) -> None:
        if not isinstance(x, (int, np.integer)) or not 0 <= x < self.n_states:
            raise DomainError(f"state must be an int in [0, {self.n_states})")

    def initial_state(self, rng=None):
        return int(np.argmax(self.log_weights))

    def enumerate_states(self) -> list:
        return list(range(self.n_states))

    def statistic(self, x) -> float:
        return float(x)

    def state_header(self) -> list[str]:
        return ["state"]

    def state_row(self, x) -> list:
        return [int(x)]

    def probabilities(self) -> np.ndarray:
        """The normalized target, for exact comparisons."""
        w = np.exp(self.log_weights - self.log_weights.max())
        return w / w.sum()


def three_state_path(probs=(0.2, 0.5, 0.3)) -> TabularTarget:
    """The 3-state example target used throughout the exact checks."""
    p = np.asarray(probs, dtype=float)
    if p.size != 3 or (p <= 0).any():
        raise DomainError("need three positive probabilities")
    return TabularTarget(np.log(p), name="path3")


def triangle_target(n: int = 21) -> TabularTarget:
    """Piecewise-linear weights rising to a peak and falling back."""
    i = np.arange(n)
    w = np.minimum(i + 1, n - i).astype(float)
    return TabularTarget(np.log(w), name="triangle")


def beta_binomial_target(n: int = 50, a: float = 10.0, b: float = 20.0) -> TabularTarget:
    """Beta-binomial pmf on {0, ..., n-1} as a tabular target."""
    from scipy.stats import betabinom

    lw = betabinom.logpmf(np.arange(n), n - 1, a, b)
    return TabularTarget(lw, name=f"betabinom{n}")
