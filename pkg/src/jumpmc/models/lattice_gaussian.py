"""Gaussian-shaped target on the integer lattice Z^d with unit step moves.

    log pi(z) = -pi * ||B z||^2 / s^2

for a basis matrix B and scale s.  An optional box window truncates the
support for exact enumeration; steps leaving the window get zero rate.
"""

from __future__ import annotations

import itertools

import numpy as np

from ..errors import DomainError, SizeCapError
from ..statespace import Target, plus_minus_generators

__all__ = ["LatticeGaussian"]


class LatticeGaussian(Target):
    """Integer lattice target with coordinate step generators.

    Generator i (0 <= i < d) adds +1 to coordinate i; generator d+i is its
    inverse.  States are integer vectors of length d.
    """

    def __init__(
        self,
        dim: int | None = None,
        scale: float = 1.0,
        basis=None,
        window: tuple[int, int] | None = None,
        name: str = "lattice_gaussian",
    ):
        if basis is None:
            if dim is None:
                raise DomainError("give either a dimension or a basis matrix")
            B = np.eye(dim)
        else:
            B = np.asarray(basis, dtype=float)
            if B.ndim != 2 or B.shape[0] != B.shape[1]:
                raise DomainError("basis must be a square matrix")
            if dim is not None and dim != B.shape[0]:
                raise DomainError("dim and basis shape disagree")
        if scale <= 0:
            raise DomainError("scale must be positive")
        self.basis = B
        self.dim = B.shape[0]
        self.scale = float(scale)
        if window is not None:
            lo, hi = int(window[0]), int(window[1])
            if lo >= hi:
                raise DomainError("window must satisfy lo < hi")
            window = (lo, hi)
        self.window = window
        self.name = name
        self.generators = plus_minus_generators(self.dim)
        self._coeff = np.pi / self.scale**2
        # column Gram data for the incremental ratio formula
        self._col_sq = np.einsum("ij,ij->j", B, B)

    def _in_window(self, z) -> bool:
        if self.window is None:
            return True
        lo, hi = self.window
        return bool(np.all(z >= lo) and np.all(z <= hi))

    def log_density(self, z) -> float:
        z = np.asarray(z)
        if not self._in_window(z):
            return -np.inf
        w = self.basis @ z
        return float(-self._coeff * (w @ w))

    def apply(self, gid: int, z):
        self.generators.get(gid)
        y = z.copy()
        i = gid % self.dim
        y[i] += 1 if gid < self.dim else -1
        return y

    def log_ratio(self, x, gid: int) -> float:
        return float(self.log_ratios(x)[gid])

    def log_ratios(self, x, cache=None) -> np.ndarray:
        w = cache["w"] if cache is not None else self.basis @ np.asarray(x, dtype=float)
        u = self.basis.T @ w
        up = -self._coeff * (2.0 * u + self._col_sq)
        down = -self._coeff * (-2.0 * u + self._col_sq)
        out = np.concatenate([up, down])
        if self.window is not None:
            lo, hi = self.window
            out[: self.dim][np.asarray(x) >= hi] = -np.inf
            out[self.dim :][np.asarray(x) <= lo] = -np.inf
        return out

    def make_cache(self, x):
        return {"w": self.basis @ np.asarray(x, dtype=float)}

    def advance_cache(self, cache, gid: int, x_old, x_new):
        i = gid % self.dim
        sign = 1.0 if gid < self.dim else -1.0
        return {"w": cache["w"] + sign * self.basis[:, i]}

    def validate_state(self, x) -> None:
        arr = np.asarray(x)
        if arr.shape != (self.dim,) or not np.issubdtype(arr.dtype, np.integer):
            raise DomainError(f"state must be an integer vector of length {self.dim}")
        if not self._in_window(arr):
            raise DomainError("state lies outside the window")

    def initial_state(self, rng=None):
        return np.zeros(self.dim, dtype=np.int64)

    def enumerate_states(self) -> list:
        if self.window is None:
            raise SizeCapError("cannot enumerate an unbounded lattice; set a window")
        lo, hi = self.window
        count = (hi - lo + 1) ** self.dim
        if count > 200_000:
            raise SizeCapError(f"{count} window states is too many to list")
        return [
            np.array(z, dtype=np.int64)
            for z in itertools.product(range(lo, hi + 1), repeat=self.dim)
        ]

    def state_header(self) -> list[str]:
        return [f"z{i}" for i in range(self.dim)]

    def state_row(self, x) -> list:
        return [int(v) for v in x]
