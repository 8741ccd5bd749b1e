"""Maximum b-matchings, the exhaustive oracle for them, and bipartite duals.

The solver splits every vertex ``v`` into ``b(v)`` copies, joins the copy
sets of adjacent vertices completely, and runs Edmonds' blossom algorithm for
a maximum-cardinality matching on the result.  A matching of the split graph
maps to a b-matching by counting matched copy pairs per edge, and every
b-matching lifts back, so the two optima coincide.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import maximum_flow

from .errors import GuardExceededError, InputError, NotBipartiteError
from .graph import Edge, Graph, bipartition, bits, check_vertex_function


@dataclass(frozen=True)
class BMatching:
    """Edge multiplicities ``x``, aligned with ``edges`` (the graph's sorted edge list)."""

    edges: tuple[Edge, ...]
    x: tuple[int, ...]

    @property
    def weight(self) -> int:
        return sum(self.x)

    def multiplicity(self, u: int, v: int) -> int:
        return self.x[self.edges.index((min(u, v), max(u, v)))]

    def as_dict(self) -> dict[Edge, int]:
        return dict(zip(self.edges, self.x))

    def loads(self, n: int) -> list[int]:
        """``sum of x(e)`` over the edges at each vertex."""
        load = [0] * n
        for (u, v), xe in zip(self.edges, self.x):
            load[u] += xe
            load[v] += xe
        return load

    def is_feasible(self, g: Graph, b: Sequence[int]) -> bool:
        if self.edges != g.edges or any(xe < 0 for xe in self.x):
            return False
        return all(load <= cap for load, cap in zip(self.loads(g.n), b))


def max_cardinality_matching(adj: Sequence[Sequence[int]]) -> list[int]:
    """Edmonds' blossom algorithm.  Returns ``mate`` (``-1`` for exposed vertices).

    ``adj[v]`` must be sorted for the result to be reproducible; a greedy
    pass in id order seeds the matching.
    """
    n = len(adj)
    mate = [-1] * n
    for v in range(n):
        if mate[v] == -1:
            for w in adj[v]:
                if mate[w] == -1:
                    mate[v], mate[w] = w, v
                    break

    parent = [-1] * n
    base = list(range(n))
    used = [False] * n

    def lca(a: int, b: int) -> int:
        seen = [False] * n
        while True:
            a = base[a]
            seen[a] = True
            if mate[a] == -1:
                break
            a = parent[mate[a]]
        while True:
            b = base[b]
            if seen[b]:
                return b
            b = parent[mate[b]]

    def mark_path(v: int, b: int, child: int, blossom: list[bool]) -> None:
        while base[v] != b:
            blossom[base[v]] = blossom[base[mate[v]]] = True
            parent[v] = child
            child = mate[v]
            v = parent[mate[v]]

    def find_path(root: int) -> int:
        for i in range(n):
            parent[i] = -1
            base[i] = i
            used[i] = False
        used[root] = True
        queue = deque([root])
        while queue:
            v = queue.popleft()
            for to in adj[v]:
                if base[v] == base[to] or mate[v] == to:
                    continue
                if to == root or (mate[to] != -1 and parent[mate[to]] != -1):
                    cur = lca(v, to)
                    blossom = [False] * n
                    mark_path(v, cur, to, blossom)
                    mark_path(to, cur, v, blossom)
                    for i in range(n):
                        if blossom[base[i]]:
                            base[i] = cur
                            if not used[i]:
                                used[i] = True
                                queue.append(i)
                elif parent[to] == -1:
                    parent[to] = v
                    if mate[to] == -1:
                        return to
                    used[mate[to]] = True
                    queue.append(mate[to])
        return -1

    for root in range(n):
        if mate[root] != -1:
            continue
        end = find_path(root)
        while end != -1:
            pv = parent[end]
            nxt = mate[pv]
            mate[end], mate[pv] = pv, end
            end = nxt
    return mate


def _effective_capacities(g: Graph, b: Sequence[int]) -> list[int]:
    # The load at v never exceeds what its neighbors can absorb.
    return [min(b[v], sum(b[u] for u in g.neighbors(v))) for v in range(g.n)]


def max_weight_b_matching(g: Graph, b: Sequence[int]) -> BMatching:
    """Maximum-weight b-matching of ``g`` under vertex capacities ``b``."""
    b = check_vertex_function(b, g.n, "capacity")
    cap = _effective_capacities(g, b)
    offset = [0] * (g.n + 1)
    for v in range(g.n):
        offset[v + 1] = offset[v] + cap[v]
    owner = [v for v in range(g.n) for _ in range(cap[v])]
    shared = []
    for v in range(g.n):
        shared.append([c for u in g.neighbors(v) for c in range(offset[u], offset[u + 1])])
    adj = [shared[owner[c]] for c in range(offset[g.n])]
    mate = max_cardinality_matching(adj)

    x = [0] * len(g.edges)
    idx = g.edge_index
    for c, m in enumerate(mate):
        if m > c:
            u, v = owner[c], owner[m]
            x[idx[(min(u, v), max(u, v))]] += 1
    return BMatching(g.edges, tuple(x))


def brute_force_nu(g: Graph, b: Sequence[int], max_edges: int = 12, max_capacity: int = 4) -> int:
    """Exhaustive maximum b-matching weight for small inputs.

    Enumerates every multiplicity vector with ``0 <= x(e) <= min(b(u), b(v))``
    edge by edge, pruning infeasible partial vectors and memoizing on the
    residual capacities of vertices that still have unvisited edges.

    Raises:
        GuardExceededError: more than ``max_edges`` edges or a capacity above
            ``max_capacity``.
    """
    b = check_vertex_function(b, g.n, "capacity")
    if len(g.edges) > max_edges:
        raise GuardExceededError(f"brute_force_nu: {len(g.edges)} edges > {max_edges}")
    if any(c > max_capacity for c in b):
        raise GuardExceededError(f"brute_force_nu: capacity {max(b)} > {max_capacity}")
    edges = g.edges
    m = len(edges)
    # live[i]: vertices touched by edges i.. (their residuals still matter)
    live = [()] * (m + 1)
    for i in range(m - 1, -1, -1):
        live[i] = tuple(sorted(set(live[i + 1]) | set(edges[i])))
    res = list(b)
    memo: dict[tuple, int] = {}

    def search(i: int) -> int:
        if i == m:
            return 0
        key = (i, tuple(res[v] for v in live[i]))
        hit = memo.get(key)
        if hit is not None:
            return hit
        u, v = edges[i]
        best = 0
        for xe in range(min(res[u], res[v]) + 1):
            res[u] -= xe
            res[v] -= xe
            best = max(best, xe + search(i + 1))
            res[u] += xe
            res[v] += xe
        memo[key] = best
        return best

    return search(0)


def min_weight_vertex_cover_bipartite(g: Graph, w: Sequence[int]) -> tuple[int, list[int]]:
    """Minimum ``w``-weight vertex cover of a bipartite graph via a minimum cut.

    Returns ``(weight, cover)`` with ``cover`` sorted.
    """
    w = check_vertex_function(w, g.n, "weight")
    parts = bipartition(g)
    if parts is None:
        raise NotBipartiteError()
    left, right = parts
    if not g.edges:
        return 0, []
    n = g.n
    s, t = n, n + 1
    big = sum(w) + 1
    cap = np.zeros((n + 2, n + 2), dtype=np.int64)
    is_left = [False] * n
    for v in left:
        is_left[v] = True
        cap[s, v] = w[v]
    for v in right:
        cap[v, t] = w[v]
    for u, v in g.edges:
        lo, hi = (u, v) if is_left[u] else (v, u)
        cap[lo, hi] = big
    result = maximum_flow(csr_matrix(cap.astype(np.int32)), s, t)
    flow = result.flow.toarray()
    residual = cap - flow
    reached = [False] * (n + 2)
    reached[s] = True
    queue = deque([s])
    while queue:
        a = queue.popleft()
        for c in np.nonzero(residual[a] > 0)[0]:
            if not reached[c]:
                reached[c] = True
                queue.append(int(c))
    cover = sorted([v for v in left if not reached[v]] + [v for v in right if reached[v]])
    return int(result.flow_value), cover


def bipartite_cover_certificate(g: Graph, b: Sequence[int], m: BMatching) -> list[int]:
    """A vertex cover whose ``b``-weight equals ``m.weight``, certifying that ``m`` is optimal.

    Raises:
        NotBipartiteError: ``g`` is not bipartite.
        InputError: ``m`` is infeasible or not of maximum weight.
    """
    b = check_vertex_function(b, g.n, "capacity")
    if not m.is_feasible(g, b):
        raise InputError("b-matching is infeasible for these capacities")
    weight, cover = min_weight_vertex_cover_bipartite(g, b)
    if weight != m.weight:
        raise InputError(f"b-matching has weight {m.weight}, but the optimum is {weight}")
    return cover


def max_weight_independent_set(g: Graph, f: Sequence[int], max_general: int = 20) -> tuple[int, list[int]]:
    """Maximum ``f``-weight independent set ``(value, sorted witness)``.

    Bipartite graphs take the complement of a minimum-weight cover; other
    graphs fall back to branching, guarded at ``max_general`` vertices.
    """
    f = check_vertex_function(f, g.n, "weight")
    if g.n == 0:
        return 0, []
    if bipartition(g) is not None:
        weight, cover = min_weight_vertex_cover_bipartite(g, f)
        in_cover = set(cover)
        return sum(f) - weight, [v for v in range(g.n) if v not in in_cover]
    if g.n > max_general:
        raise GuardExceededError(
            f"independent set on a non-bipartite graph with {g.n} > {max_general} vertices"
        )
    memo: dict[int, tuple[int, int]] = {}

    def best(mask: int) -> tuple[int, int]:
        if not mask:
            return 0, 0
        hit = memo.get(mask)
        if hit is not None:
            return hit
        pivot, pivot_deg = -1, -1
        for v in bits(mask):
            d = (g.adj[v] & mask).bit_count()
            if d > pivot_deg:
                pivot, pivot_deg = v, d
        if pivot_deg == 0:
            chosen = 0
            for v in bits(mask):
                if f[v] > 0:
                    chosen |= 1 << v
            out = (sum(f[v] for v in bits(chosen)), chosen)
        else:
            rest = mask & ~(1 << pivot)
            val_in, set_in = best(rest & ~g.adj[pivot])
            val_out, set_out = best(rest)
            if val_in + f[pivot] >= val_out:
                out = (val_in + f[pivot], set_in | (1 << pivot))
            else:
                out = (val_out, set_out)
        memo[mask] = out
        return out

    value, chosen = best((1 << g.n) - 1)
    return value, bits(chosen)
