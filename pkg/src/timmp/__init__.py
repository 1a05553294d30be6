"""Combinatorial toolkit for topological interference management with message passing.

Conflict digraphs, acyclic set coloring, clique-cycle outer bounds,
matrix-class integrality tests, successive index coding and a census of
small instances.
"""

from .coloring import (
    dichromatic_number,
    extract_schedule,
    fractional_dichromatic,
    local_fractional_dichromatic,
    simulate_schedule,
)
from .dof import classify_case, dof_region, outer_bound_polytope, symmetric_dof
from .enumeration import maximal_acyclic_sets, maximal_cliques, minimal_dicycles
from .graphs import (
    BipartiteTopology,
    DecodingOrder,
    Digraph,
    GraphError,
    SizeLimitError,
    build_conflict_digraph,
    canonical_form,
    strong_components,
)

__version__ = "0.1.0"

__all__ = [
    "BipartiteTopology",
    "DecodingOrder",
    "Digraph",
    "GraphError",
    "SizeLimitError",
    "build_conflict_digraph",
    "canonical_form",
    "classify_case",
    "dichromatic_number",
    "dof_region",
    "extract_schedule",
    "fractional_dichromatic",
    "local_fractional_dichromatic",
    "maximal_acyclic_sets",
    "maximal_cliques",
    "minimal_dicycles",
    "outer_bound_polytope",
    "simulate_schedule",
    "strong_components",
    "symmetric_dof",
]
