"""Distance-preserving edge contractions of weighted graphs.

Contracting an edge set ``C`` sets the length of its edges to 0.  For a
tolerance ``phi(x) = x/alpha - beta`` the set is feasible when every pair of
vertices keeps ``dist_C(u, v) >= phi(dist(u, v))``; the goal is to save as
many edges as possible in the quotient graph.
"""

from .feasibility import (
    AllContractedError,
    ContractionChecker,
    Violation,
    check_additive_endpoint_restricted,
    check_bipartite_unit_11,
    check_contraction,
    check_girth6_weak_20,
    check_weak_contraction,
)
from .graph import ContractionResult, Edge, Graph, apply_contraction, phi_value, shortest_distances
from .oracle import OracleResult, brute_force_optimum
from .tolerance import AffineTolerance, LogStretchTolerance, compose, evaluate

__all__ = [
    "AffineTolerance",
    "AllContractedError",
    "ContractionChecker",
    "ContractionResult",
    "Edge",
    "Graph",
    "LogStretchTolerance",
    "OracleResult",
    "Violation",
    "apply_contraction",
    "brute_force_optimum",
    "check_additive_endpoint_restricted",
    "check_bipartite_unit_11",
    "check_contraction",
    "check_girth6_weak_20",
    "check_weak_contraction",
    "compose",
    "evaluate",
    "phi_value",
    "shortest_distances",
]
