"""Graph and digraph model plus the structural analyses the constructions use.

Vertices are the dense integers ``0..n-1``.  Neighborhoods and reachability
sets are kept as Python ints used as bitsets (bit ``v`` set means vertex ``v``
is present), which keeps the triangle and closure computations short.  All
iteration is in ascending vertex id so every result is reproducible.
"""

from __future__ import annotations

import heapq
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import maximum_bipartite_matching

from .errors import DimensionMismatchError, InputError, NotADagError, NotDiamondFreeError

Edge = tuple[int, int]
VertexFunction = tuple[int, ...]


def bits(mask: int) -> list[int]:
    """Vertex ids present in a bitset, ascending."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def check_vertex_function(values: Sequence[int], n: int, name: str = "vertex function") -> VertexFunction:
    """Validate and freeze a per-vertex nonnegative integer map."""
    if len(values) != n:
        raise DimensionMismatchError(f"{name} has length {len(values)}, expected {n}")
    out = tuple(int(x) for x in values)
    for v, x in enumerate(out):
        if x < 0:
            raise InputError(f"{name}[{v}] = {x} is negative")
    return out


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph.  ``edges`` is normalized to sorted ``(u, v)`` with ``u < v``."""

    n: int
    edges: tuple[Edge, ...] = ()

    def __post_init__(self) -> None:
        if self.n < 0:
            raise InputError("vertex count must be nonnegative")
        seen = set()
        for u, v in self.edges:
            if u == v:
                raise InputError(f"loop at vertex {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise InputError(f"edge ({u}, {v}) has an endpoint outside 0..{self.n - 1}")
            e = (min(u, v), max(u, v))
            if e in seen:
                raise InputError(f"duplicate edge {e}")
            seen.add(e)
        object.__setattr__(self, "edges", tuple(sorted(seen)))

    @cached_property
    def adj(self) -> tuple[int, ...]:
        masks = [0] * self.n
        for u, v in self.edges:
            masks[u] |= 1 << v
            masks[v] |= 1 << u
        return tuple(masks)

    @cached_property
    def edge_index(self) -> dict[Edge, int]:
        return {e: i for i, e in enumerate(self.edges)}

    @cached_property
    def degrees(self) -> VertexFunction:
        return tuple(m.bit_count() for m in self.adj)

    def neighbors(self, v: int) -> list[int]:
        return bits(self.adj[v])

    def degree(self, v: int) -> int:
        return self.degrees[v]

    def has_edge(self, u: int, v: int) -> bool:
        return u != v and bool(self.adj[u] >> v & 1)

    def incident(self, v: int) -> list[int]:
        """Ids of the edges incident with ``v``."""
        idx = self.edge_index
        return [idx[(min(u, v), max(u, v))] for u in self.neighbors(v)]


@dataclass(frozen=True)
class Digraph:
    """Simple digraph.  Opposite arcs ``(u, v)`` and ``(v, u)`` may coexist."""

    n: int
    arcs: tuple[Edge, ...] = ()

    def __post_init__(self) -> None:
        if self.n < 0:
            raise InputError("vertex count must be nonnegative")
        seen = set()
        for u, v in self.arcs:
            if u == v:
                raise InputError(f"loop at vertex {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise InputError(f"arc ({u}, {v}) has an endpoint outside 0..{self.n - 1}")
            if (u, v) in seen:
                raise InputError(f"duplicate arc ({u}, {v})")
            seen.add((u, v))
        object.__setattr__(self, "arcs", tuple(sorted(seen)))

    @cached_property
    def out_mask(self) -> tuple[int, ...]:
        masks = [0] * self.n
        for u, v in self.arcs:
            masks[u] |= 1 << v
        return tuple(masks)

    @cached_property
    def in_mask(self) -> tuple[int, ...]:
        masks = [0] * self.n
        for u, v in self.arcs:
            masks[v] |= 1 << u
        return tuple(masks)

    def successors(self, v: int) -> list[int]:
        return bits(self.out_mask[v])

    def predecessors(self, v: int) -> list[int]:
        return bits(self.in_mask[v])

    def has_arc(self, u: int, v: int) -> bool:
        return bool(self.out_mask[u] >> v & 1)


def symmetric_digraph(g: Graph) -> Digraph:
    """Replace every edge of ``g`` by a pair of opposite arcs."""
    return Digraph(g.n, [a for u, v in g.edges for a in ((u, v), (v, u))])


def underlying_graph(d: Digraph) -> Graph:
    return Graph(d.n, {(min(u, v), max(u, v)) for u, v in d.arcs})


def topological_order(d: Digraph) -> list[int] | None:
    """Kahn's algorithm with smallest-id-first tie-break; ``None`` on a cycle."""
    indeg = [m.bit_count() for m in d.in_mask]
    heap = [v for v in range(d.n) if indeg[v] == 0]
    heapq.heapify(heap)
    order = []
    while heap:
        u = heapq.heappop(heap)
        order.append(u)
        for w in d.successors(u):
            indeg[w] -= 1
            if indeg[w] == 0:
                heapq.heappush(heap, w)
    return order if len(order) == d.n else None


def is_dag(d: Digraph) -> bool:
    return topological_order(d) is not None


def scc_decomposition(d: Digraph) -> tuple[list[int], list[list[int]]]:
    """Strongly connected components.

    Returns ``(comp, components)`` where ``components`` lists the vertex sets
    (each sorted) in a topological order of the condensation and ``comp[v]``
    is the position of ``v``'s component in that list.  Among admissible
    orders, the component with the smallest vertex id goes first.
    """
    # Iterative Tarjan.
    index = [-1] * d.n
    low = [0] * d.n
    on_stack = [False] * d.n
    stack: list[int] = []
    raw: list[list[int]] = []
    counter = 0
    succ = [d.successors(v) for v in range(d.n)]
    for root in range(d.n):
        if index[root] != -1:
            continue
        work = [(root, 0)]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack[root] = True
        while work:
            v, i = work[-1]
            if i < len(succ[v]):
                work[-1] = (v, i + 1)
                w = succ[v][i]
                if index[w] == -1:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack[w] = True
                    work.append((w, 0))
                elif on_stack[w]:
                    low[v] = min(low[v], index[w])
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
            if low[v] == index[v]:
                members = []
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    members.append(w)
                    if w == v:
                        break
                raw.append(sorted(members))

    raw_of = [0] * d.n
    for c, members in enumerate(raw):
        for v in members:
            raw_of[v] = c
    k = len(raw)
    out_edges: list[set[int]] = [set() for _ in range(k)]
    indeg = [0] * k
    for u, v in d.arcs:
        cu, cv = raw_of[u], raw_of[v]
        if cu != cv and cv not in out_edges[cu]:
            out_edges[cu].add(cv)
            indeg[cv] += 1
    heap = [(raw[c][0], c) for c in range(k) if indeg[c] == 0]
    heapq.heapify(heap)
    components = []
    while heap:
        _, c = heapq.heappop(heap)
        components.append(raw[c])
        for c2 in out_edges[c]:
            indeg[c2] -= 1
            if indeg[c2] == 0:
                heapq.heappush(heap, (raw[c2][0], c2))
    comp = [0] * d.n
    for i, members in enumerate(components):
        for v in members:
            comp[v] = i
    return comp, components


def hamiltonian_path(d: Digraph) -> list[int] | None:
    """The Hamiltonian path of a DAG, or ``None`` if it has none.

    A DAG has a Hamiltonian path exactly when consecutive vertices of its
    topological order are joined by arcs, and then that order is the path.

    Raises:
        NotADagError: ``d`` has a cycle.
    """
    order = topological_order(d)
    if order is None:
        raise NotADagError()
    for u, v in zip(order, order[1:]):
        if not d.has_arc(u, v):
            return None
    return order


def find_triangle(g: Graph) -> tuple[int, int, int] | None:
    """Lexicographically first triangle ``(u, v, w)`` with ``u < v < w``, if any."""
    for u, v in g.edges:
        common = g.adj[u] & g.adj[v] & ~((1 << (v + 1)) - 1)
        if common:
            return (u, v, (common & -common).bit_length() - 1)
    return None


def is_triangle_free(g: Graph) -> bool:
    return find_triangle(g) is None


def _components_within(g: Graph, mask: int) -> list[int]:
    """Connected components of the subgraph induced by ``mask``, as bitsets."""
    comps = []
    while mask:
        start = mask & -mask
        comp = start
        frontier = start
        while frontier:
            low = frontier & -frontier
            frontier ^= low
            new = g.adj[low.bit_length() - 1] & mask & ~comp
            comp |= new
            frontier |= new
        comps.append(comp)
        mask &= ~comp
    return comps


def _is_clique(g: Graph, mask: int) -> bool:
    return all((g.adj[v] | (1 << v)) & mask == mask for v in bits(mask))


def is_diamond_free(g: Graph) -> bool:
    """Every neighborhood induces a disjoint union of complete graphs."""
    return all(
        _is_clique(g, comp)
        for v in range(g.n)
        for comp in _components_within(g, g.adj[v])
    )


def _require_diamond_free(g: Graph) -> None:
    if not is_diamond_free(g):
        raise NotDiamondFreeError()


def maximal_cliques_diamond_free(g: Graph) -> list[tuple[int, ...]]:
    """All maximal cliques of a diamond-free graph, sorted lexicographically.

    Each maximal clique through ``v`` is ``v`` plus one component of its
    neighborhood, so the cliques are read off the neighborhoods directly.
    Isolated vertices come out as singleton cliques.
    """
    _require_diamond_free(g)
    found = set()
    for v in range(g.n):
        comps = _components_within(g, g.adj[v])
        if not comps:
            found.add((v,))
        for comp in comps:
            found.add(tuple(bits(comp | (1 << v))))
    return sorted(found)


def alpha_degrees(g: Graph) -> VertexFunction:
    """Independence degree of every vertex of a diamond-free graph."""
    _require_diamond_free(g)
    return tuple(len(_components_within(g, g.adj[v])) for v in range(g.n))


def alpha_degree(g: Graph, v: int) -> int:
    _require_diamond_free(g)
    return len(_components_within(g, g.adj[v]))


def bipartition(g: Graph) -> tuple[list[int], list[int]] | None:
    """Two-coloring by BFS, side 0 holding the smallest id of each component."""
    side = [-1] * g.n
    for s in range(g.n):
        if side[s] != -1:
            continue
        side[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for w in g.neighbors(u):
                if side[w] == -1:
                    side[w] = 1 - side[u]
                    queue.append(w)
                elif side[w] == side[u]:
                    return None
    return [v for v in range(g.n) if side[v] == 0], [v for v in range(g.n) if side[v] == 1]


def is_bipartite(g: Graph) -> bool:
    return bipartition(g) is not None


def reachability(d: Digraph) -> tuple[int, ...]:
    """``reach[u]`` has bit ``v`` set iff there is a directed u,v-path with ``u != v``."""
    order = topological_order(d)
    if order is not None:
        reach = [0] * d.n
        for u in reversed(order):
            acc = 0
            for w in d.successors(u):
                acc |= (1 << w) | reach[w]
            reach[u] = acc
        return tuple(reach)
    out = []
    for u in range(d.n):
        seen = 0
        frontier = d.out_mask[u]
        while frontier:
            seen |= frontier
            nxt = 0
            for w in bits(frontier):
                nxt |= d.out_mask[w]
            frontier = nxt & ~seen
        out.append(seen & ~(1 << u))
    return tuple(out)


@dataclass(frozen=True)
class PosetGraph:
    """A graph together with a DAG whose reachability relation is the partial order."""

    graph: Graph
    order_dag: Digraph = field(default=None)  # type: ignore[assignment]

    def __post_init__(self) -> None:
        if self.order_dag is None:
            object.__setattr__(self, "order_dag", Digraph(self.graph.n))
        if self.order_dag.n != self.graph.n:
            raise DimensionMismatchError(
                f"order DAG has {self.order_dag.n} vertices, graph has {self.graph.n}"
            )
        if not is_dag(self.order_dag):
            raise NotADagError("order DAG has a cycle")

    @cached_property
    def closure(self) -> tuple[int, ...]:
        return reachability(self.order_dag)

    @cached_property
    def minimal(self) -> tuple[int, ...]:
        return tuple(v for v in range(self.graph.n) if not self.order_dag.in_mask[v])

    def below(self, v: int) -> list[int]:
        """All ``u`` with ``u`` strictly preceding ``v``."""
        return [u for u in range(self.graph.n) if self.closure[u] >> v & 1]


def reachability_poset(d: Digraph) -> PosetGraph:
    """The underlying graph of a DAG ordered by its own reachability."""
    return PosetGraph(underlying_graph(d), d)


def precedes(p: PosetGraph, u: int, v: int) -> bool:
    if u == v:
        raise InputError("precedes() needs two distinct vertices")
    return bool(p.closure[u] >> v & 1)


def min_chain_cover(d: Digraph) -> list[list[int]]:
    """Minimum partition of a DAG's vertices into reachability chains.

    Minimum path cover of the transitive closure: ``n`` minus a maximum
    matching in the split bipartite graph (Dilworth / Fulkerson).  Chains are
    listed by their first vertex, each in reachability order.
    """
    if not is_dag(d):
        raise NotADagError()
    n = d.n
    if n == 0:
        return []
    reach = reachability(d)
    rows, cols = [], []
    for u in range(n):
        for v in bits(reach[u]):
            rows.append(u)
            cols.append(v)
    mat = csr_matrix((np.ones(len(rows), dtype=np.int8), (rows, cols)), shape=(n, n))
    match = maximum_bipartite_matching(mat, perm_type="column")
    nxt = [int(c) for c in match]
    has_prev = [False] * n
    for u in range(n):
        if nxt[u] >= 0:
            has_prev[nxt[u]] = True
    chains = []
    for s in range(n):
        if has_prev[s]:
            continue
        chain = [s]
        while nxt[chain[-1]] >= 0:
            chain.append(nxt[chain[-1]])
        chains.append(chain)
    return chains


def greedy_coloring(g: Graph) -> tuple[int, list[int]]:
    """First-fit coloring in id order.  Returns ``(k, class of each vertex)``."""
    classes = [-1] * g.n
    for v in range(g.n):
        taken = {classes[u] for u in g.neighbors(v) if classes[u] >= 0}
        c = 0
        while c in taken:
            c += 1
        classes[v] = c
    return (max(classes) + 1 if classes else 0), classes
