"""Streaming and multi-pass submodular maximisation under matroid constraints."""

from .continuous_greedy import DSCGConfig, acg_procedure, discretized_continuous_greedy, dscg
from .hardness import LayeredFunction, layered_value, make_layered, verify_family_properties
from .local_search import local_search_pass, multi_pass_local_search
from .matroid import GraphicMatroid, Matroid, PartitionMatroid, UniformMatroid
from .multilinear import (
    EstimatorConfig,
    ExactCoverage,
    FractionalPoint,
    MonteCarlo,
    estimate_F,
    exact_F_coverage,
    partial_derivative,
)
from .objective import CoverageFunction, CutFunction, ModularFunction, SubmodularFunction
from .rounding import ConvexCombination, round_best_of, swap_round
from .single_pass import SinglePass, SinglePassConfig, single_pass
from .two_player import TwoPlayerInstance, alice, bob, run_protocol

__version__ = "0.1.0"
