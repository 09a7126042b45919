"""Alternating path systems: representation, verification and constructions."""

from .counting import alt_p2_middles, alt_p2_system, count_alt_p2, kappa2_upper_bound
from .dense import LayerPlan, dense_construct, dense_plan, neighbourhood_split
from .estimate import (KappaEstimate, Regime, classify, construct, diameter_parameter,
                       kappa_estimate, theory_target)
from .sparse import contract_bipartite, level_shape, sparse_construct, star_size
from .system import PathSystem, verify_path_system

__all__ = [
    "KappaEstimate", "LayerPlan", "PathSystem", "Regime", "alt_p2_middles",
    "alt_p2_system", "classify", "construct", "contract_bipartite", "count_alt_p2",
    "dense_construct", "dense_plan", "diameter_parameter", "kappa2_upper_bound",
    "kappa_estimate", "level_shape", "neighbourhood_split", "sparse_construct",
    "star_size", "theory_target", "verify_path_system",
]
