"""Compact abelian field on the edges of a planar grid.

Each edge of an (nx x ny)-vertex rectangular grid carries a value in
Z_p = {0, ..., p-1}.  Every unit square ("plaquette") contributes an
action term through the plain sum of its four edge values:

    log pi(x) = -beta * sum_P [1 - cos(2 pi sigma_P / p)],
    sigma_P   = sum of the four edge values around P.

Moves increment or decrement one edge modulo p.  The model keeps the
vector of plaquette sums as its cache; because the action is p-periodic
in each sigma_P, wrapping an edge value changes sigma_P by a multiple of
p and leaves every cosine unchanged.
"""

from __future__ import annotations

import itertools

import numpy as np

from ..errors import DomainError, SizeCapError
from ..statespace import Target, plus_minus_generators

__all__ = ["GaugeField"]


class GaugeField(Target):
    """Z_p edge field on a rectangular grid with plaquette action."""

    statistic_name = "action"

    def __init__(self, shape=(4, 4), modulus: int = 53, beta: float = 1.0):
        nx, ny = int(shape[0]), int(shape[1])
        if nx < 2 or ny < 2:
            raise DomainError("grid needs at least 2x2 vertices")
        if modulus < 2:
            raise DomainError("modulus must be at least 2")
        self.shape = (nx, ny)
        self.modulus = int(modulus)
        self.beta = float(beta)
        self.name = f"gauge{nx}x{ny}"

        n_h = (nx - 1) * ny
        n_v = nx * (ny - 1)
        self.n_edges = n_h + n_v
        self.n_plaquettes = (nx - 1) * (ny - 1)

        def h_edge(i, j):
            return i * ny + j

        def v_edge(i, j):
            return n_h + i * (ny - 1) + j

        incidence = np.zeros((self.n_plaquettes, self.n_edges), dtype=np.int64)
        plaq = 0
        for i in range(nx - 1):
            for j in range(ny - 1):
                for e in (h_edge(i, j), h_edge(i, j + 1), v_edge(i, j), v_edge(i + 1, j)):
                    incidence[plaq, e] = 1
                plaq += 1
        self.incidence = incidence
        self._incidence_f = incidence.astype(float)
        self._plaquettes_of_edge = [
            np.flatnonzero(incidence[:, e]) for e in range(self.n_edges)
        ]
        self.generators = plus_minus_generators(
            self.n_edges, order=self.modulus, labels=[f"edge{e}" for e in range(self.n_edges)]
        )
        self._angle = 2.0 * np.pi / self.modulus

    def plaquette_sums(self, x) -> np.ndarray:
        return self.incidence @ np.asarray(x, dtype=np.int64)

    def action(self, x) -> float:
        sigma = self.plaquette_sums(x)
        return float(np.sum(1.0 - np.cos(self._angle * sigma)))

    def log_density(self, x) -> float:
        return -self.beta * self.action(x)

    def statistic(self, x) -> float:
        return self.action(x)

    def apply(self, gid: int, x):
        self.generators.get(gid)
        e = gid % self.n_edges
        d = 1 if gid < self.n_edges else -1
        y = x.copy()
        y[e] = (y[e] + d) % self.modulus
        return y

    def log_ratio(self, x, gid: int) -> float:
        e = gid % self.n_edges
        d = 1 if gid < self.n_edges else -1
        plaqs = self._plaquettes_of_edge[e]
        sigma = self.plaquette_sums(x)[plaqs]
        before = np.cos(self._angle * sigma)
        after = np.cos(self._angle * (sigma + d))
        return float(-self.beta * np.sum(before - after))

    def log_ratios(self, x, cache=None) -> np.ndarray:
        sigma = cache["sigma"] if cache is not None else self.plaquette_sums(x)
        c0 = np.cos(self._angle * sigma)
        c_up = np.cos(self._angle * (sigma + 1))
        c_down = np.cos(self._angle * (sigma - 1))
        up = -self.beta * (self._incidence_f.T @ (c0 - c_up))
        down = -self.beta * (self._incidence_f.T @ (c0 - c_down))
        return np.concatenate([up, down])

    def make_cache(self, x):
        return {"sigma": self.plaquette_sums(x)}

    def advance_cache(self, cache, gid: int, x_old, x_new):
        e = gid % self.n_edges
        delta = int(x_new[e]) - int(x_old[e])
        sigma = cache["sigma"].copy()
        sigma[self._plaquettes_of_edge[e]] += delta
        return {"sigma": sigma}

    def validate_state(self, x) -> None:
        arr = np.asarray(x)
        if arr.shape != (self.n_edges,) or not np.issubdtype(arr.dtype, np.integer):
            raise DomainError(f"state must be an integer vector of length {self.n_edges}")
        if (arr < 0).any() or (arr >= self.modulus).any():
            raise DomainError(f"edge values must lie in [0, {self.modulus})")

    def initial_state(self, rng=None):
        if rng is None:
            return np.zeros(self.n_edges, dtype=np.int64)
        return rng.integers(0, self.modulus, size=self.n_edges, dtype=np.int64)

    def enumerate_states(self) -> list:
        count = self.modulus**self.n_edges
        if count > 200_000:
            raise SizeCapError(f"{count} edge configurations is too many to list")
        return [
            np.array(v, dtype=np.int64)
            for v in itertools.product(range(self.modulus), repeat=self.n_edges)
        ]

    def circle_coordinates(self, x, edge: int = 0) -> tuple[float, float]:
        """Map one edge value to the unit circle, for trajectory plots."""
        theta = self._angle * float(x[edge])
        return (float(np.cos(theta)), float(np.sin(theta)))

    def state_header(self) -> list[str]:
        return [f"e{i}" for i in range(self.n_edges)]

    def state_row(self, x) -> list:
        return [int(v) for v in x]
