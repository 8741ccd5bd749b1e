"""Optimal constrained intersection representations of graphs and digraphs.

The headline routine is :func:`din_hamiltonian_triangle_free`, which computes
the directed intersection number of a triangle-free DAG with a Hamiltonian
path through a maximum b-matching, together with a witness representation.
"""

from .constructions import (
    BipartiteDinResult,
    DinResult,
    EllInResult,
    PosetInResult,
    alpha_ranking,
    bipartite_din,
    capacity_from_demand,
    construct_wdin,
    din_hamiltonian_triangle_free,
    din_lower_bound,
    ell_constrained_in_triangle_free,
    generic_din_construction,
    normalize_to_poset_rep,
    path_capacity,
    poset_capacity,
    poset_in_triangle_free,
    weak_rep_admissible,
)
from .errors import (
    DimensionMismatchError,
    DinrepError,
    GuardExceededError,
    InadmissibleDigraphError,
    InputError,
    InstanceFormatError,
    NoHamiltonianPathError,
    NotADagError,
    NotBipartiteError,
    NotDiamondFreeError,
    NotTriangleFreeError,
    PreconditionError,
    SearchCancelled,
)
from .graph import Digraph, Graph, PosetGraph, reachability_poset, underlying_graph
from .matching import BMatching, brute_force_nu, max_weight_b_matching
from .representations import (
    Representation,
    Violation,
    compact,
    verify_din,
    verify_ell_in,
    verify_in,
    verify_poset_in,
    verify_uin,
    verify_wdin,
)

__version__ = "0.1.0"

__all__ = [
    "BipartiteDinResult",
    "DinResult",
    "EllInResult",
    "PosetInResult",
    "alpha_ranking",
    "bipartite_din",
    "capacity_from_demand",
    "construct_wdin",
    "din_hamiltonian_triangle_free",
    "din_lower_bound",
    "ell_constrained_in_triangle_free",
    "generic_din_construction",
    "normalize_to_poset_rep",
    "path_capacity",
    "poset_capacity",
    "poset_in_triangle_free",
    "weak_rep_admissible",
    "DimensionMismatchError",
    "DinrepError",
    "GuardExceededError",
    "InadmissibleDigraphError",
    "InputError",
    "InstanceFormatError",
    "NoHamiltonianPathError",
    "NotADagError",
    "NotBipartiteError",
    "NotDiamondFreeError",
    "NotTriangleFreeError",
    "PreconditionError",
    "SearchCancelled",
    "Digraph",
    "Graph",
    "PosetGraph",
    "reachability_poset",
    "underlying_graph",
    "BMatching",
    "brute_force_nu",
    "max_weight_b_matching",
    "Representation",
    "Violation",
    "compact",
    "verify_din",
    "verify_ell_in",
    "verify_in",
    "verify_poset_in",
    "verify_uin",
    "verify_wdin",
]
