"""Toolkit for 01-gadgets, Kochen-Specker graphs and their vector realizations."""

from .colorer import (Coloring, GadgetCertificate, GadgetRefusal, KSCertificate,
                      SearchBudgetExceeded, enumerate_colorings, extract_gadget,
                      find_gadget_pairs, forced_value, is_colorable, is_gadget,
                      make_edge_critical, make_vertex_critical, solve)
from .fractional import indeterminacy_table, is_extended_gadget, lp_maximize, max_pair
from .graph import Graph, find_forbidden, maximal_cliques, maximum_cliques
from .vectors import VectorSet, check_faithful, faithful_version, orthogonality_graph

__version__ = "0.1.0"

__all__ = [
    "Coloring", "GadgetCertificate", "GadgetRefusal", "Graph", "KSCertificate",
    "SearchBudgetExceeded", "VectorSet", "check_faithful", "enumerate_colorings",
    "extract_gadget", "faithful_version", "find_forbidden", "find_gadget_pairs",
    "forced_value", "indeterminacy_table", "is_colorable", "is_extended_gadget", "is_gadget",
    "lp_maximize", "make_edge_critical", "make_vertex_critical", "max_pair",
    "maximal_cliques", "maximum_cliques", "orthogonality_graph", "solve",
]
