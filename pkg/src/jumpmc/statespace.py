"""State spaces structured by a finite set of invertible moves.

A target distribution lives on a discrete set of states together with a
symmetric set of moves ("generators"): each generator has an inverse in the
set, and applying a generator to a state yields a neighbouring state.  The
samplers only ever touch a target through this interface, so any model that
can report unnormalized log densities and apply moves plugs in.

Generators are referenced by integer id into the owning target's move
table.  A reduced set keeps one member of each inverse pair; its members
still know their inverse's id, which is how the lifted samplers move in
the reverse direction without the inverse being part of the reduced set.
"""

from __future__ import annotations

import math
from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from .errors import DomainError, SizeCapError

__all__ = [
    "Generator",
    "GeneratorSet",
    "Target",
    "reduced_set",
    "neighbourhood",
    "involution_generators",
    "plus_minus_generators",
]


@dataclass(frozen=True)
class Generator:
    """One invertible move.

    ``order`` is the smallest positive power giving the identity (2 for an
    involution, ``math.inf`` for free moves such as lattice increments).
    ``inverse_gid`` may reference a generator outside the containing set;
    that happens in reduced sets.
    """

    gid: int
    inverse_gid: int
    order: float
    label: str = ""

    def __post_init__(self):
        if self.gid < 0 or self.inverse_gid < 0:
            raise DomainError("generator ids must be nonnegative")
        if self.order != math.inf:
            if int(self.order) != self.order or self.order < 2:
                raise DomainError("order must be an integer >= 2 or inf")
        if self.order == 2 and self.inverse_gid != self.gid:
            raise DomainError("an order-2 generator must be its own inverse")
        if self.order != 2 and self.inverse_gid == self.gid:
            raise DomainError("a self-inverse generator must have order 2")

    @property
    def is_involution(self) -> bool:
        return self.order == 2


class GeneratorSet:
    """An ordered collection of generators with id-based lookup."""

    def __init__(self, generators: Sequence[Generator]):
        gens = list(generators)
        if not gens:
            raise DomainError("a generator set cannot be empty")
        self._by_gid = {}
        for gen in gens:
            if gen.gid in self._by_gid:
                raise DomainError(f"duplicate generator id {gen.gid}")
            self._by_gid[gen.gid] = gen
        for gen in gens:
            inv = self._by_gid.get(gen.inverse_gid)
            if inv is not None:
                if inv.inverse_gid != gen.gid:
                    raise DomainError(
                        f"inverse pairing broken between {gen.gid} and {inv.gid}"
                    )
                if inv.order != gen.order:
                    raise DomainError(
                        f"generators {gen.gid} and {inv.gid} are inverses "
                        "but report different orders"
                    )
        self._gens = gens

    def __len__(self) -> int:
        return len(self._gens)

    def __iter__(self) -> Iterator[Generator]:
        return iter(self._gens)

    def __contains__(self, gid: int) -> bool:
        return gid in self._by_gid

    def get(self, gid: int) -> Generator:
        try:
            return self._by_gid[gid]
        except KeyError:
            raise DomainError(f"no generator with id {gid}") from None

    def inverse_of(self, gid: int) -> int:
        return self.get(gid).inverse_gid

    @property
    def gids(self) -> list[int]:
        return [g.gid for g in self._gens]

    @property
    def symmetric(self) -> bool:
        """True when every member's inverse is also a member."""
        return all(g.inverse_gid in self._by_gid for g in self._gens)

    @property
    def all_involutions(self) -> bool:
        return all(g.is_involution for g in self._gens)

    @property
    def max_order(self) -> float:
        return max(g.order for g in self._gens)

    def reduced(self) -> "GeneratorSet":
        """One generator per inverse pair, keeping the lower id.

        Involutions are kept as they are.  The union of the result and its
        inverses recovers the full set, which is what the lifted samplers
        rely on.
        """
        if not self.symmetric:
            raise DomainError("can only reduce a symmetric generator set")
        kept = [g for g in self._gens if g.gid <= g.inverse_gid]
        return GeneratorSet(kept)

    def __repr__(self) -> str:
        return f"GeneratorSet({len(self._gens)} generators, symmetric={self.symmetric})"


def reduced_set(generators: GeneratorSet) -> GeneratorSet:
    """Functional alias for :meth:`GeneratorSet.reduced`."""
    return generators.reduced()


def involution_generators(n: int, labels: Sequence[str] | None = None) -> GeneratorSet:
    """n self-inverse generators with ids 0..n-1."""
    if labels is None:
        labels = [f"flip{i}" for i in range(n)]
    return GeneratorSet(
        [Generator(i, i, 2, labels[i]) for i in range(n)]
    )


def plus_minus_generators(
    d: int, order: float = math.inf, labels: Sequence[str] | None = None
) -> GeneratorSet:
    """2d generators: ids 0..d-1 are "+" moves, ids d..2d-1 their inverses.

    ``order`` applies to every generator (``math.inf`` for free increments,
    or a finite cyclic order such as a modulus).
    """
    if labels is None:
        labels = [f"coord{i}" for i in range(d)]
    gens = []
    for i in range(d):
        gens.append(Generator(i, i + d, order, f"+{labels[i]}"))
    for i in range(d):
        gens.append(Generator(i + d, i, order, f"-{labels[i]}"))
    return GeneratorSet(gens)


class Target(ABC):
    """Base class for unnormalized discrete targets with a move table.

    Subclasses must provide ``generators`` (a symmetric :class:`GeneratorSet`),
    :meth:`log_density` and :meth:`apply`.  Everything else has generic
    defaults; models override :meth:`log_ratios` (and the cache hooks) when
    a cheaper incremental computation exists.
    """

    generators: GeneratorSet
    name: str = "target"
    statistic_name: str = "log_density"

    @abstractmethod
    def log_density(self, x) -> float:
        """Unnormalized log density at a state (``-inf`` off the support)."""

    @abstractmethod
    def apply(self, gid: int, x):
        """Apply generator ``gid`` to ``x`` and return the new state.

        The input state is never mutated.
        """

    def log_ratio(self, x, gid: int) -> float:
        """log pi(gamma . x) - log pi(x) for generator ``gid``.

        Defaults to the difference of :meth:`log_density` calls; models with
        local structure override this with a direct computation.  Returns
        ``-inf`` when the move leads off the support.
        """
        base = self.log_density(x)
        if not np.isfinite(base):
            raise DomainError("log_ratio evaluated at a zero-density state")
        moved = self.log_density(self.apply(gid, x))
        return moved - base

    def log_ratios(self, x, cache=None) -> np.ndarray:
        """Vector of log ratios for every generator id, in id order.

        ``cache`` is an opaque object produced by :meth:`make_cache`; the
        default implementation ignores it.
        """
        return np.array(
            [self.log_ratio(x, g.gid) for g in self.generators], dtype=float
        )

    def make_cache(self, x):
        """Build the incremental-evaluation companion for a state, if any."""
        return None

    def advance_cache(self, cache, gid: int, x_old, x_new):
        """Return the cache for ``x_new`` after applying ``gid`` to ``x_old``."""
        return None

    def check_cache(self, cache, x, tol: float = 1e-10) -> float:
        """Return the worst disagreement between cached and from-scratch
        log ratios (0.0 when the model keeps no cache)."""
        if cache is None:
            return 0.0
        cached = self.log_ratios(x, cache)
        fresh = self.log_ratios(x, None)
        both_inf = np.isneginf(cached) & np.isneginf(fresh)
        diff = np.abs(cached - fresh)
        diff[both_inf] = 0.0
        return float(np.max(diff)) if diff.size else 0.0

    def statistic(self, x) -> float:
        """Headline scalar summary recorded in event traces."""
        return self.log_density(x)

    def copy_state(self, x):
        return x.copy() if isinstance(x, np.ndarray) else x

    def state_equal(self, a, b) -> bool:
        if isinstance(a, np.ndarray) or isinstance(b, np.ndarray):
            return bool(np.array_equal(a, b))
        return a == b

    def state_key(self, x):
        """Hashable encoding of a state, used by enumeration."""
        if isinstance(x, np.ndarray):
            return tuple(x.tolist())
        return x

    def validate_state(self, x) -> None:
        """Raise :class:`DomainError` when ``x`` is not a legal state."""

    def initial_state(self, rng: np.random.Generator | None = None):
        raise NotImplementedError(f"{self.name} has no default initial state")

    def enumerate_states(self) -> list:
        raise SizeCapError(f"{self.name} does not support enumeration")

    def state_header(self) -> list[str]:
        return ["state"]

    def state_row(self, x) -> list:
        if isinstance(x, np.ndarray):
            return ["|".join(str(v) for v in x.tolist())]
        return [x]


def neighbourhood(target: Target, x, generators: GeneratorSet | None = None):
    """All (generator, moved state) pairs from ``x``.

    The result always has one entry per generator; moves that leave the
    support still appear (their rate under any balanced function is zero).
    """
    gens = generators if generators is not None else target.generators
    return [(g, target.apply(g.gid, x)) for g in gens]
