"""Model zoo: discrete targets with move structure for the samplers.

Each module defines one family.  ``build_model`` constructs instances from
plain config dictionaries, which is what the command line uses.
"""

from .tabular import TabularTarget, beta_binomial_target, triangle_target, three_state_path
from .spin import SpinSystem
from .lattice_gaussian import LatticeGaussian
from .permutation import PermutationTarget
from .facility import FacilityTarget
from .dpp import DeterminantalPointProcess
from .bvs import BayesianVariableSelection
from .gauge import GaugeField
from .registry import build_model, model_kinds

__all__ = [
    "TabularTarget",
    "beta_binomial_target",
    "triangle_target",
    "three_state_path",
    "SpinSystem",
    "LatticeGaussian",
    "PermutationTarget",
    "FacilityTarget",
    "DeterminantalPointProcess",
    "BayesianVariableSelection",
    "GaugeField",
    "build_model",
    "model_kinds",
]
