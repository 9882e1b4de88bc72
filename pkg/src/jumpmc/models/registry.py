"""Construct models from plain configuration dictionaries.

Every builder takes the parameter dictionary from a config file (without
the "kind" key) and returns a ready target.  Unknown parameters raise
:class:`ConfigError` so that typos fail loudly rather than silently using
defaults.
"""

from __future__ import annotations

import numpy as np

from ..errors import ConfigError
from .bvs import BayesianVariableSelection
from .dpp import DeterminantalPointProcess
from .facility import FacilityTarget
from .gauge import GaugeField
from .lattice_gaussian import LatticeGaussian
from .permutation import PermutationTarget
from .spin import SpinSystem
from .tabular import TabularTarget, beta_binomial_target, three_state_path, triangle_target

__all__ = ["build_model", "model_kinds"]


def _take(params: dict, allowed: dict):
    """Pop known keys with defaults; anything left over is an error."""
    params = dict(params)
    out = {}
    for key, default in allowed.items():
        out[key] = params.pop(key, default)
    if params:
        raise ConfigError(f"unknown model parameters: {sorted(params)}")
    return out


_REQUIRED = object()


def _need(values: dict, *keys):
    for key in keys:
        if values[key] is _REQUIRED:
            raise ConfigError(f"model parameter {key!r} is required")


def _build_tabular(params):
    p = _take(
        params,
        {"table": "path3", "log_weights": None, "n": None, "a": 10.0, "b": 20.0, "probs": None},
    )
    if p["log_weights"] is not None:
        return TabularTarget(np.asarray(p["log_weights"], dtype=float))
    table = p["table"]
    if table == "path3":
        return three_state_path(p["probs"] if p["probs"] is not None else (0.2, 0.5, 0.3))
    if table == "triangle":
        return triangle_target(p["n"] if p["n"] is not None else 21)
    if table == "betabinom":
        return beta_binomial_target(p["n"] if p["n"] is not None else 50, p["a"], p["b"])
    raise ConfigError(f"unknown tabular table {table!r}")


def _build_spin(params):
    p = _take(
        params,
        {
            "n": _REQUIRED,
            "interaction_scale": 1.0,
            "field": 0.0,
            "seed": 0,
            "couplings_file": None,
        },
    )
    if p["couplings_file"] is not None:
        from ..artifacts import load_matrix

        J = load_matrix(p["couplings_file"])
        return SpinSystem(J, field=p["field"])
    _need(p, "n")
    return SpinSystem.random_instance(
        int(p["n"]), p["interaction_scale"], p["field"], int(p["seed"])
    )


def _build_lattice_gaussian(params):
    p = _take(
        params,
        {"dim": _REQUIRED, "scale": 1.0, "window": None, "basis_file": None},
    )
    basis = None
    if p["basis_file"] is not None:
        from ..artifacts import load_matrix

        basis = load_matrix(p["basis_file"])
    window = tuple(p["window"]) if p["window"] is not None else None
    if basis is None:
        _need(p, "dim")
    return LatticeGaussian(
        dim=None if p["dim"] is _REQUIRED else int(p["dim"]),
        scale=p["scale"],
        basis=basis,
        window=window,
    )


def _build_permutation(params):
    p = _take(
        params,
        {"n": _REQUIRED, "log_weight_std": float(np.sqrt(5.0)), "seed": 0, "log_weights_file": None},
    )
    if p["log_weights_file"] is not None:
        from ..artifacts import load_matrix

        return PermutationTarget(load_matrix(p["log_weights_file"]))
    _need(p, "n")
    return PermutationTarget.random_instance(int(p["n"]), p["log_weight_std"], int(p["seed"]))


def _build_facility(params):
    p = _take(
        params,
        {
            "n_sites": 24,
            "n_users": 120,
            "seed": 0,
            "kappa": 0.5,
            "cost_install": 1.0,
            "cost_overload": 0.5,
            "capacity": 12,
            "sites_file": None,
            "users_file": None,
        },
    )
    if p["sites_file"] is not None or p["users_file"] is not None:
        if p["sites_file"] is None or p["users_file"] is None:
            raise ConfigError("give both sites_file and users_file or neither")
        from ..artifacts import load_matrix

        return FacilityTarget(
            load_matrix(p["sites_file"]),
            load_matrix(p["users_file"]),
            kappa=p["kappa"],
            cost_install=p["cost_install"],
            cost_overload=p["cost_overload"],
            capacity=int(p["capacity"]),
        )
    return FacilityTarget.synthesize(
        n_sites=int(p["n_sites"]),
        n_users=int(p["n_users"]),
        seed=int(p["seed"]),
        kappa=p["kappa"],
        cost_install=p["cost_install"],
        cost_overload=p["cost_overload"],
        capacity=int(p["capacity"]),
    )


def _build_dpp(params):
    p = _take(params, {"n": 50, "seed": 0, "lengthscale": 1.0, "kernel_file": None})
    if p["kernel_file"] is not None:
        from ..artifacts import load_matrix

        return DeterminantalPointProcess(load_matrix(p["kernel_file"]))
    return DeterminantalPointProcess.random_points(int(p["n"]), int(p["seed"]), p["lengthscale"])


def _build_bvs(params):
    p = _take(
        params,
        {
            "csv": None,
            "response": None,
            "log_transform": (),
            "interactions": False,
            "coef_scale": 2.0,
            "prior_df": 3.0,
            "prior_scale": 1.0,
            "inclusion_prob": 0.5,
            "n_predictors": 20,
            "n_obs": 60,
            "n_active": 4,
            "noise": 1.0,
            "seed": 0,
        },
    )
    hyper = {
        "coef_scale": p["coef_scale"],
        "prior_df": p["prior_df"],
        "prior_scale": p["prior_scale"],
        "inclusion_prob": p["inclusion_prob"],
    }
    if p["csv"] is not None:
        if p["response"] is None:
            raise ConfigError("a CSV-backed model needs a response column name")
        return BayesianVariableSelection.from_csv(
            p["csv"],
            response=p["response"],
            log_transform=tuple(p["log_transform"]),
            interactions=bool(p["interactions"]),
            **hyper,
        )
    return BayesianVariableSelection.synthesize(
        n_predictors=int(p["n_predictors"]),
        n_obs=int(p["n_obs"]),
        n_active=int(p["n_active"]),
        noise=p["noise"],
        seed=int(p["seed"]),
        **hyper,
    )


def _build_gauge(params):
    p = _take(params, {"shape": (4, 4), "modulus": 53, "beta": 1.0})
    return GaugeField(shape=tuple(p["shape"]), modulus=int(p["modulus"]), beta=p["beta"])


_BUILDERS = {
    "tabular": _build_tabular,
    "spin": _build_spin,
    "lattice_gaussian": _build_lattice_gaussian,
    "permutation": _build_permutation,
    "facility": _build_facility,
    "dpp": _build_dpp,
    "bvs": _build_bvs,
    "gauge": _build_gauge,
}


def model_kinds() -> tuple[str, ...]:
    return tuple(sorted(_BUILDERS))


def build_model(spec: dict):
    """Build a target from ``{"kind": ..., <parameters>}``."""
    if not isinstance(spec, dict) or "kind" not in spec:
        raise ConfigError("model spec must be a dict with a 'kind' key")
    params = {k: v for k, v in spec.items() if k != "kind"}
    kind = spec["kind"]
    try:
        builder = _BUILDERS[kind]
    except KeyError:
        raise ConfigError(
            f"unknown model kind {kind!r}; known: {model_kinds()}"
        ) from None
    return builder(params)
