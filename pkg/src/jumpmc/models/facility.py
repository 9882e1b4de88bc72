"""Sensor-placement target over subsets of candidate sites.

A state is a subset S of m candidate sites.  Each user j is covered by its
best site with utility U_ij = exp(-kappa * dist(site_i, user_j)^2), and

    log pi(S) = sum_j max_{i in S} U_ij
                - cost_install * |S|
                - cost_overload * sum_i max(0, load_i - capacity)

where load_i counts users whose best covering site is i (ties go to the
lowest site index) and the max over the empty subset is zero: with no
sites nothing is covered and nothing is loaded, so log pi(empty) = 0.
The coverage term is monotone submodular; the cost terms make larger
subsets pay for themselves.
"""

from __future__ import annotations

import itertools

import numpy as np

from ..errors import DomainError, SizeCapError
from ..statespace import Target, involution_generators

__all__ = ["FacilityTarget"]


class FacilityTarget(Target):
    """Coverage-minus-costs target on subsets of sites, toggle moves."""

    statistic_name = "n_sites"

    def __init__(
        self,
        sites,
        users,
        kappa: float = 0.5,
        cost_install: float = 1.0,
        cost_overload: float = 1.0,
        capacity: int = 10,
        name: str = "facility",
    ):
        sites = np.asarray(sites, dtype=float)
        users = np.asarray(users, dtype=float)
        if sites.ndim != 2 or users.ndim != 2 or sites.shape[1] != users.shape[1]:
            raise DomainError("sites and users must be point arrays of equal dimension")
        if kappa <= 0 or cost_install < 0 or cost_overload < 0 or capacity < 0:
            raise DomainError("bad cost parameters")
        self.sites = sites
        self.users = users
        self.n_sites = sites.shape[0]
        self.n_users = users.shape[0]
        self.kappa = float(kappa)
        self.cost_install = float(cost_install)
        self.cost_overload = float(cost_overload)
        self.capacity = int(capacity)
        self.name = name
        d2 = ((sites[:, None, :] - users[None, :, :]) ** 2).sum(axis=2)
        self.utility = np.exp(-self.kappa * d2)
        self.generators = involution_generators(
            self.n_sites, labels=[f"toggle{i}" for i in range(self.n_sites)]
        )

    @classmethod
    def synthesize(
        cls,
        n_sites: int = 24,
        n_users: int = 120,
        seed: int = 0,
        kappa: float = 0.5,
        cost_install: float = 1.0,
        cost_overload: float = 0.5,
        capacity: int = 12,
    ) -> "FacilityTarget":
        """Random instance on a rectangle with a notch cut out.

        The region is [0, 10] x [0, 6] minus the notch [4, 7] x [0, 2.5].
        Candidate sites sit on a jittered grid inside the region; users are
        drawn from a Gaussian around the region centre, resampled until
        they land inside.
        """
        rng = np.random.default_rng(seed)

        def inside(p):
            x, y = p[..., 0], p[..., 1]
            in_rect = (x >= 0) & (x <= 10) & (y >= 0) & (y <= 6)
            in_notch = (x >= 4) & (x <= 7) & (y <= 2.5)
            return in_rect & ~in_notch

        sites = []
        grid = int(np.ceil(np.sqrt(n_sites * 2)))
        xs = np.linspace(0.6, 9.4, grid)
        ys = np.linspace(0.6, 5.4, grid)
        for x in xs:
            for y in ys:
                p = np.array([x, y]) + rng.uniform(-0.2, 0.2, size=2)
                if inside(p):
                    sites.append(p)
        sites = np.array(sites[:n_sites])
        if len(sites) < n_sites:
            raise DomainError("grid too coarse for the requested site count")

        users = np.empty((n_users, 2))
        filled = 0
        centre = np.array([5.0, 3.5])
        while filled < n_users:
            draw = rng.normal(centre, [2.5, 1.5], size=(n_users, 2))
            good = draw[inside(draw)]
            take = min(len(good), n_users - filled)
            users[filled : filled + take] = good[:take]
            filled += take
        return cls(
            sites,
            users,
            kappa=kappa,
            cost_install=cost_install,
            cost_overload=cost_overload,
            capacity=capacity,
            name=f"facility{n_sites}",
        )

    def coverage(self, x) -> float:
        idx = np.flatnonzero(x)
        if idx.size == 0:
            return 0.0
        return float(self.utility[idx].max(axis=0).sum())

    def loads(self, x) -> np.ndarray:
        """Users assigned to each site (zero for closed sites)."""
        counts = np.zeros(self.n_sites, dtype=np.int64)
        idx = np.flatnonzero(x)
        if idx.size == 0:
            return counts
        sub = self.utility[idx]
        best = idx[sub.argmax(axis=0)]
        np.add.at(counts, best, 1)
        return counts

    def log_density(self, x) -> float:
        idx = np.flatnonzero(x)
        if idx.size == 0:
            return 0.0
        sub = self.utility[idx]
        best_val = sub.max(axis=0)
        assigned = idx[sub.argmax(axis=0)]
        counts = np.bincount(assigned, minlength=self.n_sites)
        overload = np.maximum(0, counts - self.capacity).sum()
        return float(
            best_val.sum()
            - self.cost_install * idx.size
            - self.cost_overload * overload
        )

    def apply(self, gid: int, x):
        self.generators.get(gid)
        y = x.copy()
        y[gid] = not y[gid]
        return y

    def validate_state(self, x) -> None:
        arr = np.asarray(x)
        if arr.shape != (self.n_sites,) or arr.dtype != np.bool_:
            raise DomainError(f"state must be a boolean vector of length {self.n_sites}")

    def initial_state(self, rng=None):
        return np.zeros(self.n_sites, dtype=bool)

    def enumerate_states(self) -> list:
        if self.n_sites > 16:
            raise SizeCapError(f"2^{self.n_sites} subsets is too many to list")
        out = []
        for bits in itertools.product((False, True), repeat=self.n_sites):
            out.append(np.array(bits, dtype=bool))
        return out

    def statistic(self, x) -> float:
        return float(np.count_nonzero(x))

    def state_header(self) -> list[str]:
        return [f"site{i}" for i in range(self.n_sites)]

    def state_row(self, x) -> list:
        return [int(v) for v in x]
