"""Exact-arithmetic tools for linking and knotting in spatial graphs."""

__version__ = "0.1.0"

from .errors import (GeometryError, InvalidArgument, NonGenericDirection, ResourceExhausted,
                     TheoremContradiction)
from .graphcore import (Graph, MarkedGraph, build_D4, build_F, build_F115, build_F126,
                        complete_graph, complete_multipartite, k331)
from .invariants import arf_invariant, certify_knotted, fox_coloring_count, knot_determinant
from .linkhunt import (cg_k6_checksum, f115_pipeline, find_knotted_cycle_through_path,
                       find_linked_triangles_k6, find_triangle_square_k331, k7_arf_checksum,
                       theorem1_pipeline)
from .modsplice import (build_a_cycles, reduce_to_multiple_of_n, select_zero_sum_window,
                        synthetic_scene)
from .spatial import Embedding, gauss_data, linking_number, random_embedding

__all__ = [
    "Embedding", "GeometryError", "Graph", "InvalidArgument", "MarkedGraph", "NonGenericDirection",
    "ResourceExhausted", "TheoremContradiction", "arf_invariant", "build_D4", "build_F",
    "build_F115", "build_F126", "build_a_cycles", "certify_knotted", "cg_k6_checksum",
    "complete_graph", "complete_multipartite", "f115_pipeline", "find_knotted_cycle_through_path",
    "find_linked_triangles_k6", "find_triangle_square_k331", "fox_coloring_count", "gauss_data",
    "k331", "k7_arf_checksum", "knot_determinant", "linking_number", "random_embedding",
    "reduce_to_multiple_of_n", "select_zero_sum_window", "synthetic_scene", "theorem1_pipeline",
]
