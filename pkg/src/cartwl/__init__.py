"""Coherent configurations, Weisfeiler-Leman refinement and Cartesian graph factorization."""

from .cc import (CoherentConfiguration, PartialParabolic, algebraically_isomorphic, coherent_closure,
                 partition_leq, tensor_product, verify_axioms, wl)
from .constructions import (IsoFamily, PermGroup, build_iso_family, enumerate_group, exponentiate,
                            exponentiate_graphs, product_closure_check, symmetric_group, wl_equivalence_classes)
from .extension import cylinder, is_two_closed, two_closure, two_extension
from .factor import prime_factorize, product_relation, tau_relation, theta_relation
from .graphio import parse_edge_list, parse_graph6, serialize_edge_list, serialize_graph6
from .graphs import BinaryRelation, Graph, bfs_distances, cartesian_product, named_graph
from .kwl import k_wl, project, wl_m_closed, wl_m_equivalent

__all__ = [
    "BinaryRelation", "CoherentConfiguration", "Graph", "IsoFamily", "PartialParabolic", "PermGroup",
    "algebraically_isomorphic", "bfs_distances", "build_iso_family", "cartesian_product", "coherent_closure",
    "cylinder", "enumerate_group", "exponentiate", "exponentiate_graphs", "is_two_closed", "k_wl", "named_graph", "parse_edge_list",
    "parse_graph6", "partition_leq", "prime_factorize", "product_closure_check", "product_relation", "project",
    "serialize_edge_list", "serialize_graph6", "symmetric_group", "tau_relation", "tensor_product", "theta_relation",
    "two_closure", "two_extension", "verify_axioms", "wl", "wl_equivalence_classes", "wl_m_closed",
    "wl_m_equivalent",
]
