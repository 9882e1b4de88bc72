"""Experiment configuration: JSON files driving the command line.

A config names a model, a sampler, a balancing function and the run
lengths.  Example::

    {
      "model": {"kind": "spin", "n": 50, "interaction_scale": 10.0,
                "field": 0.1, "seed": 1},
      "sampler": "tabu",
      "balancing": "sqrt",
      "total_time": 2000,
      "thinning": 1,
      "seed": 7,
      "chains": 2
    }

Command-line overrides use dotted paths into this structure, for example
``--set sampler=zanella`` or ``--set model.field=0.0``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from .balancing import available_kinds
from .errors import ConfigError
from .samplers import SAMPLER_KINDS

__all__ = ["ExperimentConfig", "apply_overrides"]


@dataclass
class ExperimentConfig:
    model: dict
    sampler: str
    total_time: int
    thinning: int
    balancing: str = "barker"
    seed: int = 0
    chains: int = 1
    burn_in: float = 0.2
    max_lag: int = 3000
    psi: list | None = None
    weights: list | None = None
    debug: bool = False
    output_dir: str | None = None
    label: str | None = None

    @classmethod
    def from_dict(cls, data: dict) -> "ExperimentConfig":
        if not isinstance(data, dict):
            raise ConfigError("config must be a JSON object")
        known = set(cls.__dataclass_fields__)
        unknown = set(data) - known
        if unknown:
            raise ConfigError(f"unknown config fields: {sorted(unknown)}")
        missing = [k for k in ("model", "sampler", "total_time", "thinning") if k not in data]
        if missing:
            raise ConfigError(f"missing config fields: {missing}")
        cfg = cls(**data)
        cfg.validate()
        return cfg

    @classmethod
    def from_file(cls, path) -> "ExperimentConfig":
        path = Path(path)
        if not path.exists():
            raise ConfigError(f"config file {path} does not exist")
        try:
            data = json.loads(path.read_text())
        except json.JSONDecodeError as err:
            raise ConfigError(f"config file {path} is not valid JSON: {err}") from None
        return cls.from_dict(data)

    def validate(self) -> None:
        if not isinstance(self.model, dict) or "kind" not in self.model:
            raise ConfigError("model must be an object with a 'kind' key")
        if self.sampler not in SAMPLER_KINDS:
            raise ConfigError(
                f"unknown sampler {self.sampler!r}; choose from {SAMPLER_KINDS}"
            )
        if self.balancing not in available_kinds():
            raise ConfigError(
                f"unknown balancing function {self.balancing!r}; "
                f"choose from {available_kinds()}"
            )
        for name in ("total_time", "thinning"):
            value = getattr(self, name)
            if not isinstance(value, int) or isinstance(value, bool) or value <= 0:
                raise ConfigError(f"{name} must be a positive integer")
        if self.total_time % self.thinning != 0:
            raise ConfigError("total_time must be a multiple of thinning")
        if not isinstance(self.seed, int) or isinstance(self.seed, bool):
            raise ConfigError("seed must be an integer")
        if not isinstance(self.chains, int) or self.chains < 1:
            raise ConfigError("chains must be a positive integer")
        if not 0.0 <= self.burn_in < 1.0:
            raise ConfigError("burn_in must lie in [0, 1)")
        if not isinstance(self.max_lag, int) or self.max_lag < 1:
            raise ConfigError("max_lag must be a positive integer")

    def to_dict(self) -> dict:
        return {k: v for k, v in self.__dict__.items() if v is not None}

    def sampler_options(self) -> dict:
        """Keyword options forwarded to the sampler constructor."""
        out = {}
        if self.psi is not None:
            if self.sampler != "dcs":
                raise ConfigError("psi only applies to the dcs sampler")
            out["psi"] = self.psi
        if self.weights is not None:
            if self.sampler != "dzz":
                raise ConfigError("weights only apply to the dzz sampler")
            out["weights"] = self.weights
        return out

    def run_label(self) -> str:
        if self.label:
            return self.label
        return f"{self.model.get('kind', 'model')}_{self.sampler}_{self.balancing}"


def _parse_value(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError:
        return text


def apply_overrides(data: dict, overrides) -> dict:
    """Apply ``path=value`` strings to a nested config dictionary.

    Values are parsed as JSON when possible (numbers, booleans, lists),
    otherwise taken as strings.
    """
    out = json.loads(json.dumps(data))
    for item in overrides or []:
        if "=" not in item:
            raise ConfigError(f"override {item!r} is not of the form path=value")
        dotted, _, raw = item.partition("=")
        keys = dotted.split(".")
        node = out
        for key in keys[:-1]:
            if key not in node or not isinstance(node[key], dict):
                node[key] = {}
            node = node[key]
        node[keys[-1]] = _parse_value(raw)
    return out
