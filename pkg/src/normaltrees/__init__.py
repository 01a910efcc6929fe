"""Normal trees and normal arborescences in digraphs, finite and periodic.

Finite side: weak normality checks, normal assistants, normal spanning trees
and exhaustive searches. Periodic side: digraphs given as a core plus
repeating necklace strands, their ends, normal spanning trees with periodic
spines, and an exact metric on vertices, ends and edge points.
"""

from .digraph import Digraph, parse_digraph, format_digraph, strong_components
from .errors import (
    AnchorNotInTree,
    FormatError,
    InvalidArborescence,
    InvalidModel,
    NormalTreeError,
    NotStronglyConnected,
    PreconditionUnsatisfiable,
    SizeLimitExceeded,
    StabilizationFailure,
    UnknownVertex,
)
from .metric import compute_Vn, distance, edge_length, side_of, weight
from .minors import BroadMinorModel, project_marked_set, verify_broad_minor_model
from .normality import (
    build_normal_spanning_tree,
    component_of,
    counterexample_truncation,
    is_normal_arborescence,
    is_weak_normal_tree_components,
    is_weak_normal_tree_def,
    normal_assistant,
)
from .periodic import End, MarkedSet, PeriodicDigraph, StrongPart, parse_periodic
from .periodic_tree import PeriodicTree, build_periodic_nst, check_end_faithfulness
from .points import EdgeInterior, LimitEdgeInterior, Vertex, parse_point
from .trees import RootedTree, parse_tree, format_tree

__all__ = [
    "AnchorNotInTree", "BroadMinorModel", "Digraph", "EdgeInterior", "End", "FormatError",
    "InvalidArborescence", "InvalidModel", "LimitEdgeInterior", "MarkedSet", "NormalTreeError",
    "NotStronglyConnected", "PeriodicDigraph", "PeriodicTree", "PreconditionUnsatisfiable",
    "RootedTree", "SizeLimitExceeded", "StabilizationFailure", "StrongPart", "UnknownVertex",
    "Vertex", "build_normal_spanning_tree", "build_periodic_nst", "check_end_faithfulness",
    "component_of", "compute_Vn", "counterexample_truncation", "distance", "edge_length",
    "format_digraph", "format_tree", "is_normal_arborescence", "is_weak_normal_tree_components",
    "is_weak_normal_tree_def", "normal_assistant", "parse_digraph", "parse_periodic",
    "parse_point", "parse_tree", "project_marked_set", "side_of", "strong_components",
    "verify_broad_minor_model", "weight",
]
