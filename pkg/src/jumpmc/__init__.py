"""Continuous-time Markov jump process samplers on discrete state spaces.

The package provides four exact (rejection-free, event-driven) samplers
driven by balancing functions of density ratios, a zoo of discrete
targets structured by invertible moves, exact verification by full
enumeration, trace diagnostics, and a config-driven command line.
"""

from . import balancing, diagnostics, models, oracle
from .balancing import BalancingFunction, check_balance, evaluate, evaluate_log
from .errors import (
    AbsorbingStateError,
    ConfigError,
    ConsistencyError,
    DegenerateVelocityError,
    DomainError,
    ReducibleChainError,
    SizeCapError,
    ToolkitError,
)
from .samplers import (
    DcsSampler,
    DzzSampler,
    EventTrace,
    RunResult,
    TabuSampler,
    ZanellaSampler,
    make_rng,
    make_sampler,
    run,
)
from .statespace import Generator, GeneratorSet, Target, neighbourhood, reduced_set

__version__ = "0.1.0"

__all__ = [
    "balancing",
    "diagnostics",
    "models",
    "oracle",
    "BalancingFunction",
    "check_balance",
    "evaluate",
    "evaluate_log",
    "Generator",
    "GeneratorSet",
    "Target",
    "neighbourhood",
    "reduced_set",
    "ZanellaSampler",
    "TabuSampler",
    "DzzSampler",
    "DcsSampler",
    "EventTrace",
    "RunResult",
    "make_sampler",
    "make_rng",
    "run",
    "ToolkitError",
    "DomainError",
    "ConfigError",
    "AbsorbingStateError",
    "DegenerateVelocityError",
    "ConsistencyError",
    "SizeCapError",
    "ReducibleChainError",
    "__version__",
]
