"""Targets on the symmetric group with transposition moves.

    pi(x) ∝ prod_i w[i, x(i)]

for a positive weight matrix w; a permutation x assigns column x(i) to row
i.  The move set is all n(n-1)/2 unordered transpositions, each its own
inverse.  Swapping i and j touches only two factors, so the ratio is O(1).
"""

from __future__ import annotations

import itertools

import numpy as np
from scipy.optimize import linear_sum_assignment

from ..errors import DomainError, SizeCapError
from ..statespace import GeneratorSet, Generator, Target

__all__ = ["PermutationTarget"]


class PermutationTarget(Target):
    """Product-form permutation target with swap moves."""

    statistic_name = "hamming_to_mode"

    def __init__(self, log_weights, name: str = "permutation"):
        lw = np.asarray(log_weights, dtype=float)
        if lw.ndim != 2 or lw.shape[0] != lw.shape[1]:
            raise DomainError("log weights must form a square matrix")
        if not np.all(np.isfinite(lw)):
            raise DomainError("log weights must be finite")
        self.log_weights = lw
        self.n_items = lw.shape[0]
        if self.n_items < 2:
            raise DomainError("need at least two items")
        self.name = name
        pairs = list(itertools.combinations(range(self.n_items), 2))
        self._pair_i = np.array([p[0] for p in pairs])
        self._pair_j = np.array([p[1] for p in pairs])
        self.generators = GeneratorSet(
            [
                Generator(k, k, 2, f"swap{p[0]},{p[1]}")
                for k, p in enumerate(pairs)
            ]
        )
        rows, cols = linear_sum_assignment(-lw)
        self.mode = cols[np.argsort(rows)].astype(np.int64)

    @classmethod
    def random_instance(
        cls, n: int, log_weight_std: float = np.sqrt(5.0), seed: int = 0
    ) -> "PermutationTarget":
        """Log-normal weights: log w ~ N(0, log_weight_std^2) i.i.d."""
        rng = np.random.default_rng(seed)
        return cls(rng.normal(0.0, log_weight_std, size=(n, n)), name=f"perm{n}")

    def log_density(self, x) -> float:
        return float(self.log_weights[np.arange(self.n_items), x].sum())

    def apply(self, gid: int, x):
        i, j = int(self._pair_i[gid]), int(self._pair_j[gid])
        y = x.copy()
        y[i], y[j] = y[j], y[i]
        return y

    def log_ratio(self, x, gid: int) -> float:
        lw = self.log_weights
        i, j = int(self._pair_i[gid]), int(self._pair_j[gid])
        return float(
            lw[i, x[j]] + lw[j, x[i]] - lw[i, x[i]] - lw[j, x[j]]
        )

    def log_ratios(self, x, cache=None) -> np.ndarray:
        lw = self.log_weights
        diag = lw[np.arange(self.n_items), x]
        i, j = self._pair_i, self._pair_j
        return lw[i, x[j]] + lw[j, x[i]] - diag[i] - diag[j]

    def validate_state(self, x) -> None:
        arr = np.asarray(x)
        if arr.shape != (self.n_items,) or not np.array_equal(
            np.sort(arr), np.arange(self.n_items)
        ):
            raise DomainError(f"state must be a permutation of 0..{self.n_items - 1}")

    def initial_state(self, rng=None):
        if rng is None:
            return np.arange(self.n_items, dtype=np.int64)
        return rng.permutation(self.n_items).astype(np.int64)

    def enumerate_states(self) -> list:
        if self.n_items > 8:
            raise SizeCapError(f"{self.n_items}! permutations is too many to list")
        return [
            np.array(p, dtype=np.int64)
            for p in itertools.permutations(range(self.n_items))
        ]

    def statistic(self, x) -> float:
        return float(np.count_nonzero(x != self.mode))

    def state_header(self) -> list[str]:
        return [f"x{i}" for i in range(self.n_items)]

    def state_row(self, x) -> list:
        return [int(v) for v in x]
