"""Parity vertex colouring workbench."""

from .graphs import (
    Graph,
    RootedBinaryTree,
    contract_edge,
    main_vertices,
    make_complete_binary_tree,
    make_cycle,
    make_path,
    make_twin_binary_tree,
    make_twin_binary_tree_rooted,
    subdivide,
    tree_from_graph,
    tree_isomorphic,
)
from .parity import (
    Colouring,
    ParityPath,
    ParityVector,
    SearchBudgetExceeded,
    certificate_is_valid,
    find_parity_path_general,
    find_parity_path_tree,
    is_parity_vertex_colouring,
    parity_vector,
)

__all__ = [
    "Graph",
    "RootedBinaryTree",
    "Colouring",
    "ParityPath",
    "ParityVector",
    "SearchBudgetExceeded",
    "certificate_is_valid",
    "contract_edge",
    "find_parity_path_general",
    "find_parity_path_tree",
    "is_parity_vertex_colouring",
    "main_vertices",
    "make_complete_binary_tree",
    "make_cycle",
    "make_path",
    "make_twin_binary_tree",
    "make_twin_binary_tree_rooted",
    "parity_vector",
    "subdivide",
    "tree_from_graph",
    "tree_isomorphic",
]
