"""Pairwise spin systems with single-spin-flip moves.

The unnormalized log density is

    log pi(x) = (1/n) * x' J x + h * sum_i x_i,       x in {-1, +1}^n,

with a symmetric zero-diagonal coupling matrix J.  Flipping spin k changes
the log density by -(4/n) x_k (J x)_k - 2 h x_k, which the model evaluates
for all spins at once from a cached local-field vector m = J x.
"""

from __future__ import annotations

import itertools

import numpy as np

from ..errors import DomainError, SizeCapError
from ..statespace import Target, involution_generators

__all__ = ["SpinSystem"]

_CACHE_REFRESH = 10_000


class SpinSystem(Target):
    """Spins on {-1, +1}^n with all-pairs couplings and an external field."""

    statistic_name = "energy"

    def __init__(self, couplings, field: float = 0.0, name: str = "spin"):
        J = np.asarray(couplings, dtype=float)
        if J.ndim != 2 or J.shape[0] != J.shape[1]:
            raise DomainError("couplings must be a square matrix")
        if not np.allclose(J, J.T, atol=1e-12):
            raise DomainError("couplings must be symmetric")
        if np.abs(np.diag(J)).max() > 1e-12:
            raise DomainError("couplings must have zero diagonal")
        if field < 0:
            raise DomainError("field must be nonnegative")
        self.couplings = J
        self.field = float(field)
        self.n_spins = J.shape[0]
        self.name = name
        self.generators = involution_generators(self.n_spins)

    @classmethod
    def random_instance(
        cls, n: int, interaction_scale: float = 1.0, field: float = 0.0, seed: int = 0
    ) -> "SpinSystem":
        """Gaussian couplings J_ij ~ N(0, interaction_scale^2 / (2n)),
        symmetric with zero diagonal."""
        rng = np.random.default_rng(seed)
        upper = rng.normal(0.0, interaction_scale / np.sqrt(2.0 * n), size=(n, n))
        J = np.triu(upper, k=1)
        J = J + J.T
        return cls(J, field=field, name=f"spin{n}")

    def log_density(self, x) -> float:
        x = np.asarray(x, dtype=float)
        return float(x @ self.couplings @ x / self.n_spins + self.field * x.sum())

    def energy(self, x) -> float:
        return -self.log_density(x)

    def statistic(self, x) -> float:
        return self.energy(x)

    def apply(self, gid: int, x):
        self.generators.get(gid)
        y = x.copy()
        y[gid] = -y[gid]
        return y

    def log_ratio(self, x, gid: int) -> float:
        m_k = float(self.couplings[gid] @ x)
        return -4.0 * x[gid] * m_k / self.n_spins - 2.0 * self.field * x[gid]

    def log_ratios(self, x, cache=None) -> np.ndarray:
        m = cache["m"] if cache is not None else self.couplings @ x
        return -4.0 * x * m / self.n_spins - 2.0 * self.field * x

    def make_cache(self, x):
        return {"m": self.couplings @ np.asarray(x, dtype=float), "age": 0}

    def advance_cache(self, cache, gid: int, x_old, x_new):
        age = cache["age"] + 1
        if age >= _CACHE_REFRESH:
            return self.make_cache(x_new)
        m = cache["m"] - 2.0 * x_old[gid] * self.couplings[:, gid]
        return {"m": m, "age": age}

    def validate_state(self, x) -> None:
        arr = np.asarray(x)
        if arr.shape != (self.n_spins,) or not np.all(np.abs(arr) == 1):
            raise DomainError(f"state must be a +-1 vector of length {self.n_spins}")

    def initial_state(self, rng=None):
        if rng is None:
            return np.ones(self.n_spins, dtype=np.int8)
        return rng.choice(np.array([-1, 1], dtype=np.int8), size=self.n_spins)

    def enumerate_states(self) -> list:
        if self.n_spins > 20:
            raise SizeCapError(f"2^{self.n_spins} spin states is too many to list")
        out = []
        for bits in itertools.product((-1, 1), repeat=self.n_spins):
            out.append(np.array(bits, dtype=np.int8))
        return out

    def state_header(self) -> list[str]:
        return [f"s{i}" for i in range(self.n_spins)]

    def state_row(self, x) -> list:
        return [int(v) for v in x]
