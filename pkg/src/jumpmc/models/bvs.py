"""Bayesian variable selection: posterior over predictor subsets.

For a submodel x (a subset of the n candidate columns of the design
matrix Z, with Z_x the kept columns and k = |x|):

    y | beta, x, s2   ~  Normal(Z_x beta, s2 I)
    beta | s2, x      ~  Normal(0, v^2 s2 I_k)
    s2                ~  InverseGamma(w/2, w*lam/2)

Integrating beta and s2 gives a closed-form marginal likelihood

    log p(y | x) = -(m/2) log 2 pi - (1/2) log|M| + a log b
                   - lgamma(a) + lgamma(a + m/2)
                   - (a + m/2) log(b + y' M^{-1} y / 2)

with M = I_m + v^2 Z_x Z_x', a = w/2, b = w lam / 2.  Both log|M| and the
quadratic form are evaluated through the k x k matrix I_k + v^2 Z_x' Z_x
(matrix determinant lemma and Woodbury identity), so the cost scales with
the submodel size rather than the sample size.

The sampled target is log pi(x) = log p(y | x) + log p(x) with independent
Bernoulli(q) inclusion.  Moves toggle one predictor.
"""

from __future__ import annotations

import itertools
import math

import numpy as np
from scipy.linalg import cho_factor, cho_solve
from scipy.special import gammaln

from ..errors import DomainError, SizeCapError
from ..statespace import Target, involution_generators

__all__ = ["BayesianVariableSelection"]


class BayesianVariableSelection(Target):
    """Posterior over predictor subsets under a conjugate shrinkage prior."""

    statistic_name = "n_included"

    def __init__(
        self,
        design,
        response,
        coef_scale: float = 2.0,
        prior_df: float = 3.0,
        prior_scale: float = 1.0,
        inclusion_prob: float = 0.5,
        predictor_names=None,
        name: str = "bvs",
    ):
        Z = np.asarray(design, dtype=float)
        y = np.asarray(response, dtype=float)
        if Z.ndim != 2 or y.ndim != 1 or Z.shape[0] != y.size:
            raise DomainError("design must be (m, n) and response length m")
        if coef_scale <= 0 or prior_df <= 0 or prior_scale <= 0:
            raise DomainError("hyperparameters must be positive")
        if not 0 < inclusion_prob < 1:
            raise DomainError("inclusion probability must lie in (0, 1)")
        self.design = Z
        self.response = y
        self.n_obs, self.n_predictors = Z.shape
        self.coef_scale = float(coef_scale)
        self.prior_df = float(prior_df)
        self.prior_scale = float(prior_scale)
        self.inclusion_prob = float(inclusion_prob)
        if predictor_names is None:
            predictor_names = [f"z{i}" for i in range(self.n_predictors)]
        self.predictor_names = list(predictor_names)
        self.name = name
        self._a = self.prior_df / 2.0
        self._b = self.prior_df * self.prior_scale / 2.0
        self._yty = float(y @ y)
        self.generators = involution_generators(
            self.n_predictors, labels=[f"toggle_{n}" for n in self.predictor_names]
        )

    @classmethod
    def synthesize(
        cls,
        n_predictors: int = 20,
        n_obs: int = 60,
        n_active: int = 4,
        noise: float = 1.0,
        seed: int = 0,
        **hyper,
    ) -> "BayesianVariableSelection":
        """Random design with a sparse true coefficient vector."""
        rng = np.random.default_rng(seed)
        Z = rng.normal(size=(n_obs, n_predictors))
        beta = np.zeros(n_predictors)
        active = rng.choice(n_predictors, size=n_active, replace=False)
        beta[active] = rng.normal(0.0, 2.0, size=n_active)
        y = Z @ beta + rng.normal(0.0, noise, size=n_obs)
        model = cls(Z, y, name=f"bvs{n_predictors}", **hyper)
        model.true_support = np.sort(active)
        return model

    @classmethod
    def from_csv(
        cls,
        path,
        response: str,
        log_transform=(),
        interactions: bool = False,
        **hyper,
    ) -> "BayesianVariableSelection":
        """Load a regression dataset from a headed CSV file.

        ``response`` names the outcome column; every other column becomes a
        candidate predictor.  Columns listed in ``log_transform`` (the
        response may be listed too) are log-transformed and must be
        positive.  With ``interactions`` the design is expanded with all
        pairwise products of the base predictors.
        """
        data = np.genfromtxt(path, delimiter=",", names=True, dtype=float)
        names = list(data.dtype.names)
        if response not in names:
            raise DomainError(f"response column {response!r} not in {names}")
        columns = {n: np.asarray(data[n], dtype=float) for n in names}
        for n in log_transform:
            if n not in columns:
                raise DomainError(f"cannot log-transform unknown column {n!r}")
            if np.any(columns[n] <= 0):
                raise DomainError(f"column {n!r} must be positive to log-transform")
            columns[n] = np.log(columns[n])
        y = columns.pop(response)
        pred_names = [n for n in names if n != response]
        cols = [columns[n] for n in pred_names]
        if interactions:
            base = list(zip(pred_names, cols))
            for (na, ca), (nb, cb) in itertools.combinations(base, 2):
                pred_names.append(f"{na}*{nb}")
                cols.append(ca * cb)
        Z = np.column_stack(cols)
        return cls(Z, y, predictor_names=pred_names, **hyper)

    def log_marginal(self, x) -> float:
        """Closed-form log p(y | x) for the submodel x."""
        idx = np.flatnonzero(x)
        k = idx.size
        m = self.n_obs
        a, b = self._a, self._b
        if k == 0:
            logdet = 0.0
            quad = self._yty
        else:
            Zx = self.design[:, idx]
            A = np.eye(k) + self.coef_scale**2 * (Zx.T @ Zx)
            chol = cho_factor(A, lower=True)
            logdet = 2.0 * float(np.sum(np.log(np.diag(chol[0]))))
            u = Zx.T @ self.response
            quad = self._yty - self.coef_scale**2 * float(u @ cho_solve(chol, u))
        return (
            -0.5 * m * math.log(2.0 * math.pi)
            - 0.5 * logdet
            + a * math.log(b)
            - gammaln(a)
            + gammaln(a + 0.5 * m)
            - (a + 0.5 * m) * math.log(b + 0.5 * quad)
        )

    def log_density(self, x) -> float:
        k = int(np.count_nonzero(x))
        q = self.inclusion_prob
        prior = k * math.log(q) + (self.n_predictors - k) * math.log(1.0 - q)
        return self.log_marginal(x) + prior

    def apply(self, gid: int, x):
        self.generators.get(gid)
        y = x.copy()
        y[gid] = not y[gid]
        return y

    def validate_state(self, x) -> None:
        arr = np.asarray(x)
        if arr.shape != (self.n_predictors,) or arr.dtype != np.bool_:
            raise DomainError(
                f"state must be a boolean vector of length {self.n_predictors}"
            )

    def initial_state(self, rng=None):
        return np.zeros(self.n_predictors, dtype=bool)

    def enumerate_states(self) -> list:
        if self.n_predictors > 16:
            raise SizeCapError(
                f"2^{self.n_predictors} submodels is too many to list"
            )
        out = []
        for bits in itertools.product((False, True), repeat=self.n_predictors):
            out.append(np.array(bits, dtype=bool))
        return out

    def statistic(self, x) -> float:
        return float(np.count_nonzero(x))

    def state_header(self) -> list[str]:
        return [f"in_{n}" for n in self.predictor_names]

    def state_row(self, x) -> list:
        return [int(v) for v in x]
