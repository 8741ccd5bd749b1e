"""Constructions of (weak / directed / constrained) intersection representations.

The optimal pipeline for triangle-free Hamiltonian DAGs runs

    DAG -> reachability-ordered graph -> alpha-ranking demand
        -> capacity b = demand - degree -> maximum b-matching
        -> edge colors + matched extras + private colors -> trimmed representation

and reports ``|A| + b(V) - nu(G, b)`` colors.  Fresh colors are always handed
out in the same order: one per edge (edge-id order), then each edge's matched
extras, then each vertex's private colors (vertex-id order).
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import NamedTuple, Sequence

from .errors import (
    InadmissibleDigraphError,
    InputError,
    NoHamiltonianPathError,
    NotADagError,
    NotBipartiteError,
    NotTriangleFreeError,
    PreconditionError,
)
from .graph import (
    Digraph,
    Graph,
    PosetGraph,
    VertexFunction,
    alpha_degrees,
    bipartition,
    check_vertex_function,
    find_triangle,
    hamiltonian_path,
    is_dag,
    maximal_cliques_diamond_free,
    reachability,
    reachability_poset,
    scc_decomposition,
    topological_order,
    underlying_graph,
)
from .matching import BMatching, max_weight_b_matching, max_weight_independent_set
from .representations import Representation, verify_ell_in


class EllInResult(NamedTuple):
    value: int
    representation: Representation
    matching: BMatching


class PosetInResult(NamedTuple):
    value: int
    representation: Representation


class BipartiteDinResult(NamedTuple):
    value: int
    weight: VertexFunction
    independent_set: list[int]


@dataclass(frozen=True)
class DinResult:
    """Optimal directed intersection representation plus its certificate.

    ``value == arcs + sum(capacity) - matching.weight`` and the
    representation uses exactly ``value`` colors.
    """

    value: int
    representation: Representation
    capacity: VertexFunction
    matching: BMatching
    path: tuple[int, ...] = ()


# -- weak directed representations -------------------------------------------


def _asymmetric_scc_arc(d: Digraph) -> tuple[int, int] | None:
    comp, _ = scc_decomposition(d)
    for u, v in d.arcs:
        if comp[u] == comp[v] and not d.has_arc(v, u):
            return (u, v)
    return None


def weak_rep_admissible(d: Digraph) -> bool:
    """Whether every strongly connected component of ``d`` is symmetric."""
    return _asymmetric_scc_arc(d) is None


def construct_wdin(d: Digraph) -> Representation:
    """A valid, generally non-optimal, weak directed intersection representation.

    1. inside each strongly connected component, one color per undirected edge;
    2. one fresh color per arc joining two different components;
    3. pad every vertex of the i-th component (condensation order) to
       ``n_i = max(n_{i-1} + 1, largest set in the component)``.

    Raises:
        InadmissibleDigraphError: some component is not symmetric.
    """
    bad = _asymmetric_scc_arc(d)
    if bad is not None:
        raise InadmissibleDigraphError(bad)
    comp, components = scc_decomposition(d)
    sets: list[list[int]] = [[] for _ in range(d.n)]
    nxt = 0
    inner = sorted({(u, v) for u, v in d.arcs if u < v and comp[u] == comp[v]})
    for u, v in inner:
        sets[u].append(nxt)
        sets[v].append(nxt)
        nxt += 1
    for u, v in d.arcs:
        if comp[u] != comp[v]:
            sets[u].append(nxt)
            sets[v].append(nxt)
            nxt += 1
    level = 0
    for i, members in enumerate(components):
        widest = max(len(sets[v]) for v in members)
        level = widest if i == 0 else max(level + 1, widest)
        for v in members:
            while len(sets[v]) < level:
                sets[v].append(nxt)
                nxt += 1
    return Representation.from_sets(nxt, sets)


# -- demand and capacity functions -------------------------------------------


def alpha_ranking(p: PosetGraph) -> VertexFunction:
    """Demand combining independence degree with depth in the order.

    ``l(v) = alpha_deg(v)`` for minimal ``v``, otherwise
    ``max(alpha_deg(v), 1 + max l(u) over arcs (u, v) of the order DAG)``.
    Only defined here for diamond-free graphs.
    """
    adeg = alpha_degrees(p.graph)
    order = topological_order(p.order_dag)
    assert order is not None
    ell = [0] * p.graph.n
    for v in order:
        preds = p.order_dag.predecessors(v)
        ell[v] = max(adeg[v], 1 + max(ell[u] for u in preds)) if preds else adeg[v]
    return tuple(ell)


def capacity_from_demand(g: Graph, ell: Sequence[int]) -> VertexFunction:
    ell = check_vertex_function(ell, g.n, "demand")
    return tuple(max(ell[v] - g.degree(v), 0) for v in range(g.n))


def poset_capacity(p: PosetGraph) -> VertexFunction:
    """Capacity ``b`` for a triangle-free ordered graph, computed straight from the order.

    ``b(v) = 0`` for minimal ``v``; otherwise
    ``max(1 - deg(v) + max over u below v of (b(u) + deg(u)), 0)``.
    """
    g = p.graph
    order = topological_order(p.order_dag)
    assert order is not None
    b = [0] * g.n
    for v in order:
        below = p.below(v)
        if below:
            b[v] = max(1 - g.degree(v) + max(b[u] + g.degree(u) for u in below), 0)
    return tuple(b)


def path_capacity(g: Graph, path: Sequence[int]) -> VertexFunction:
    """``b(v_1) = 0``, ``b(v_i) = max(b(v_{i-1}) + deg(v_{i-1}) - deg(v_i) + 1, 0)``."""
    b = [0] * g.n
    for prev, v in zip(path, path[1:]):
        b[v] = max(b[prev] + g.degree(prev) - g.degree(v) + 1, 0)
    return tuple(b)


# -- the b-matching construction ---------------------------------------------


def _require_triangle_free(g: Graph) -> None:
    tri = find_triangle(g)
    if tri is not None:
        raise NotTriangleFreeError(tri)


def representation_from_matching(g: Graph, b: Sequence[int], m: BMatching) -> Representation:
    """Edge colors, ``x(e)`` extras per edge, ``b(v) - load(v)`` privates per vertex."""
    sets: list[list[int]] = [[] for _ in range(g.n)]
    nxt = 0
    for u, v in g.edges:
        sets[u].append(nxt)
        sets[v].append(nxt)
        nxt += 1
    for (u, v), xe in zip(g.edges, m.x):
        for _ in range(xe):
            sets[u].append(nxt)
            sets[v].append(nxt)
            nxt += 1
    loads = m.loads(g.n)
    for v in range(g.n):
        spare = b[v] - loads[v]
        if spare < 0:
            raise InputError(f"b-matching overloads vertex {v}")
        sets[v].extend(range(nxt, nxt + spare))
        nxt += spare
    return Representation.from_sets(nxt, sets)


def ell_constrained_in_triangle_free(g: Graph, ell: Sequence[int]) -> EllInResult:
    """Optimal demand-constrained intersection representation of a triangle-free graph.

    The optimum is ``|E| + b(V) - nu(G, b)`` with ``b(v) = max(l(v) - deg(v), 0)``,
    and every vertex receives exactly ``deg(v) + b(v)`` colors.
    """
    _require_triangle_free(g)
    b = capacity_from_demand(g, ell)
    m = max_weight_b_matching(g, b)
    rep = representation_from_matching(g, b, m)
    value = len(g.edges) + sum(b) - m.weight
    assert rep.universe_size == value
    return EllInResult(value, rep, m)


def normalize_to_poset_rep(p: PosetGraph, ell: Sequence[int], r: Representation) -> Representation:
    """Turn an optimal demand-constrained representation into one respecting the order.

    For each maximal clique ``K`` (two or more vertices) the smallest color
    shared by its two smallest members becomes ``c_K`` and is added to every
    member of ``K``.  Vertices holding more than ``l(v)`` colors then keep
    their clique colors plus the lowest remaining ones, down to exactly
    ``l(v)``.  The universe is left untouched.

    Raises:
        NotDiamondFreeError: ``p.graph`` is not diamond-free.
        PreconditionError: ``ell`` is not the alpha-ranking of ``p`` or ``r``
            is not a demand-constrained representation of ``p.graph``.
    """
    g = p.graph
    ell = check_vertex_function(ell, g.n, "demand")
    cliques = maximal_cliques_diamond_free(g)
    if ell != alpha_ranking(p):
        raise PreconditionError("demand is not the alpha-ranking of the ordered graph")
    bad = verify_ell_in(g, ell, r)
    if bad is not None:
        raise PreconditionError(f"not a demand-constrained representation ({bad.kind} at {bad.vertices})")

    masks = list(r.masks)
    clique_colors = 0
    for members in cliques:
        if len(members) < 2:
            continue
        shared = masks[members[0]] & masks[members[1]]
        c = (shared & -shared).bit_length() - 1
        clique_colors |= 1 << c
        for z in members:
            masks[z] |= 1 << c

    adeg = alpha_degrees(g)
    out = []
    for v in range(g.n):
        colors = [c for c in range(r.universe_size) if masks[v] >> c & 1]
        if len(colors) > ell[v]:
            keep = [c for c in colors if clique_colors >> c & 1]
            extras = [c for c in colors if not clique_colors >> c & 1]
            colors = sorted(keep + extras[: ell[v] - adeg[v]])
        out.append(tuple(colors))
    return Representation(r.universe_size, tuple(out))


def poset_in_triangle_free(p: PosetGraph) -> PosetInResult:
    """Optimal intersection representation of a triangle-free partially ordered graph."""
    g = p.graph
    _require_triangle_free(g)
    ell = alpha_ranking(p)
    b = poset_capacity(p)
    assert b == capacity_from_demand(g, ell)
    value, rep, _ = ell_constrained_in_triangle_free(g, ell)
    return PosetInResult(value, normalize_to_poset_rep(p, ell, rep))


# -- DIN of triangle-free Hamiltonian DAGs -----------------------------------


def _hamiltonian_triangle_free(d: Digraph) -> tuple[list[int], Graph]:
    path = hamiltonian_path(d)
    if path is None:
        raise NoHamiltonianPathError()
    g = underlying_graph(d)
    _require_triangle_free(g)
    return path, g


def din_hamiltonian_triangle_free(d: Digraph) -> DinResult:
    """Directed intersection number of a triangle-free Hamiltonian DAG, with witness.

    Raises:
        NotADagError, NoHamiltonianPathError, NotTriangleFreeError
    """
    path, g = _hamiltonian_triangle_free(d)
    b = path_capacity(g, path)
    m = max_weight_b_matching(g, b)
    # deg + b is the alpha-ranking of the reachability order, so every set
    # already has its final size and no trimming is needed.
    rep = representation_from_matching(g, b, m)
    value = len(d.arcs) + sum(b) - m.weight
    assert rep.universe_size == value
    return DinResult(value, rep, b, m, tuple(path))


def bipartite_din(d: Digraph) -> BipartiteDinResult:
    """DIN of a bipartite Hamiltonian DAG as ``|A| + alpha(D, b)``.

    ``w(v_1) = deg(v_1)``, ``w(v_i) = max(w(v_{i-1}) + 1, deg(v_i))`` along
    the path and ``b = w - deg``.
    """
    path = hamiltonian_path(d)
    if path is None:
        raise NoHamiltonianPathError()
    g = underlying_graph(d)
    if bipartition(g) is None:
        raise NotBipartiteError("underlying graph is not bipartite")
    w = [0] * d.n
    for i, v in enumerate(path):
        w[v] = g.degree(v) if i == 0 else max(w[path[i - 1]] + 1, g.degree(v))
    b = [w[v] - g.degree(v) for v in range(d.n)]
    alpha, witness = max_weight_independent_set(g, b)
    return BipartiteDinResult(len(d.arcs) + alpha, tuple(w), witness)


# -- bounds for general DAGs --------------------------------------------------


def generic_din_construction(d: Digraph) -> Representation:
    """A directed intersection representation of any DAG (upper bound only).

    One color per arc, then vertex ``v_i`` of the topological order is padded
    with private colors to ``s_i = max(deg(v_i), s_{i-1} + 1)``, ``s_1 = max(deg(v_1), 1)``.
    """
    order = topological_order(d)
    if order is None:
        raise NotADagError()
    g = underlying_graph(d)
    sets: list[list[int]] = [[] for _ in range(d.n)]
    for c, (u, v) in enumerate(d.arcs):
        sets[u].append(c)
        sets[v].append(c)
    target = [0] * d.n
    prev = 0
    for v in order:
        prev = max(g.degree(v), prev + 1)
        target[v] = prev
    nxt = len(d.arcs)
    for v in range(d.n):
        extra = target[v] - len(sets[v])
        sets[v].extend(range(nxt, nxt + extra))
        nxt += extra
    return Representation.from_sets(nxt, sets)


def din_lower_bound(d: Digraph, chains: Sequence[Sequence[int]], coloring: tuple[int, Sequence[int]]) -> int:
    """Lower bound on DIN from a chain cover and a proper coloring.

    Inside the longest chain the largest color class ``I`` is independent, and
    its sets have pairwise distinct sizes, so they are pairwise disjoint and
    need at least ``1 + 2 + ... + |I|`` colors.  A lone isolated vertex may
    get the empty set, so a longest chain of one isolated vertex gives 0.

    Raises:
        InputError: the chains do not form a chain cover or the coloring is
            not proper on the underlying graph.
    """
    if not is_dag(d):
        raise NotADagError()
    seen = [0] * d.n
    for chain in chains:
        for v in chain:
            if not 0 <= v < d.n:
                raise InputError(f"chain vertex {v} out of range")
            seen[v] += 1
    if any(c != 1 for c in seen):
        raise InputError("chains do not partition the vertex set")
    reach = reachability(d)
    for chain in chains:
        for u, v in zip(chain, chain[1:]):
            if not reach[u] >> v & 1:
                raise InputError(f"chain step {u} -> {v} is not a directed path")
    k, classes = coloring
    if len(classes) != d.n or any(not 0 <= c < k for c in classes):
        raise InputError("coloring does not assign a class in 0..k-1 to every vertex")
    g = underlying_graph(d)
    for u, v in g.edges:
        if classes[u] == classes[v]:
            raise InputError(f"coloring is not proper on edge ({u}, {v})")
    if not chains:
        return 0
    longest = max(chains, key=len)
    if len(longest) == 1 and g.degree(longest[0]) == 0:
        return 0
    counts: dict[int, int] = {}
    for v in longest:
        counts[classes[v]] = counts.get(classes[v], 0) + 1
    size = max(counts.values())
    return comb(size + 1, 2)


def din_of_dag_if_tractable(d: Digraph) -> DinResult | None:
    """Run the exact pipeline when ``d`` is a triangle-free Hamiltonian DAG, else ``None``."""
    if not is_dag(d) or hamiltonian_path(d) is None or find_triangle(underlying_graph(d)):
        return None
    return din_hamiltonian_triangle_free(d)


def reachability_poset_in(d: Digraph) -> PosetInResult:
    """Poset pipeline on the reachability order of a DAG."""
    return poset_in_triangle_free(reachability_poset(d))
