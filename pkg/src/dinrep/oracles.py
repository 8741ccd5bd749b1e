"""Exhaustive solvers for tiny instances, used to check the formulas.

Every oracle refuses inputs outside its guard instead of returning an
approximation.  The searches accept an optional ``cancel`` object with an
``is_set()`` method (``threading.Event`` works) and raise
:class:`SearchCancelled` once it is set.
"""

from __future__ import annotations

from itertools import combinations
from typing import Protocol, Sequence

from .constructions import generic_din_construction
from .errors import GuardExceededError, NoHamiltonianPathError, NotADagError, NotTriangleFreeError, SearchCancelled
from .graph import Digraph, Graph, bits, check_vertex_function, find_triangle, hamiltonian_path, reachability, topological_order, underlying_graph


class CancelToken(Protocol):
    def is_set(self) -> bool: ...


class _Ticker:
    def __init__(self, cancel: CancelToken | None) -> None:
        self.cancel = cancel
        self.count = 0

    def tick(self) -> None:
        self.count += 1
        if self.cancel is not None and self.count & 1023 == 1 and self.cancel.is_set():
            raise SearchCancelled()


def _pair_index(n: int) -> dict[tuple[int, int], int]:
    return {pair: i for i, pair in enumerate(combinations(range(n), 2))}


def oracle_din_tiny(d: Digraph, max_n: int = 4, cancel: CancelToken | None = None) -> int:
    """Exact DIN of a DAG with at most ``max_n`` vertices.

    A representation is a multiset of color supports (the vertex sets
    carrying each color).  Supports are branched on in a fixed order, each
    with a multiplicity, which removes the color-permutation symmetry.  A
    support may not hold two vertices joined by a directed path unless they
    are adjacent, since their sizes differ.  The search is bounded by the
    generic construction and pruned on unreachable arcs and on the size
    increase still required along arcs.
    """
    if d.n > max_n:
        raise GuardExceededError(f"oracle_din_tiny: {d.n} vertices > {max_n}")
    order = topological_order(d)
    if order is None:
        raise NotADagError()
    n = d.n
    reach = reachability(d)
    g = underlying_graph(d)
    pidx = _pair_index(n)

    supports = []
    for mask in range(1, 1 << n):
        vs = bits(mask)
        if all(g.has_edge(u, v) or not (reach[u] >> v & 1 or reach[v] >> u & 1) for u, v in combinations(vs, 2)):
            pair_mask = 0
            for u, v in combinations(vs, 2):
                pair_mask |= 1 << pidx[(u, v)]
            supports.append((vs, pair_mask))
    supports.sort(key=lambda s: (-len(s[0]), s[0]))
    suffix_pairs = [0] * (len(supports) + 1)
    for i in range(len(supports) - 1, -1, -1):
        suffix_pairs[i] = suffix_pairs[i + 1] | supports[i][1]
    arc_pairs = 0
    for u, v in d.arcs:
        arc_pairs |= 1 << pidx[(min(u, v), max(u, v))]
    preds = [d.predecessors(v) for v in range(n)]

    sizes = [0] * n
    best = generic_din_construction(d).universe_size
    ticker = _Ticker(cancel)

    def valid(met: int) -> bool:
        for (u, v), i in pidx.items():
            if not met >> i & 1:
                continue
            if d.has_arc(u, v):
                if not sizes[u] < sizes[v]:
                    return False
            elif d.has_arc(v, u):
                if not sizes[v] < sizes[u]:
                    return False
            elif sizes[u] != sizes[v]:
                return False
        return True

    def more_needed(met: int) -> int:
        req = [0] * n
        need = 0
        for v in order:
            req[v] = max([sizes[v]] + [req[u] + 1 for u in preds[v]])
            need = max(need, req[v] - sizes[v])
        if arc_pairs & ~met:
            need = max(need, 1)
        return need

    def search(i: int, used: int, met: int) -> None:
        nonlocal best
        ticker.tick()
        if not arc_pairs & ~met and valid(met):
            best = min(best, used)
            return
        if i == len(supports):
            return
        if arc_pairs & ~met & ~suffix_pairs[i]:
            return
        if used + more_needed(met) >= best:
            return
        vs, pair_mask = supports[i]
        search(i + 1, used, met)
        m = 0
        while used + m + 1 < best:
            m += 1
            for v in vs:
                sizes[v] += 1
            search(i + 1, used + m, met | pair_mask)
        for v in vs:
            sizes[v] -= m

    search(0, 0, 0)
    return best


def _max_edge_load(edges: Sequence[tuple[int, int]], cap: list[int], low: int, ticker: _Ticker) -> int | None:
    """Maximum ``sum x(e)`` with ``low <= x(e)`` and per-vertex load ``<= cap``; ``None`` if infeasible."""
    m = len(edges)
    live: list[tuple[int, ...]] = [()] * (m + 1)
    for i in range(m - 1, -1, -1):
        live[i] = tuple(sorted(set(live[i + 1]) | set(edges[i])))
    memo: dict[tuple, int | None] = {}

    def search(i: int) -> int | None:
        if i == m:
            return 0
        key = (i, tuple(cap[v] for v in live[i]))
        if key in memo:
            return memo[key]
        ticker.tick()
        u, v = edges[i]
        best = None
        for xe in range(low, min(cap[u], cap[v]) + 1):
            cap[u] -= xe
            cap[v] -= xe
            rest = search(i + 1)
            cap[u] += xe
            cap[v] += xe
            if rest is not None and (best is None or xe + rest > best):
                best = xe + rest
        memo[key] = best
        return best

    return search(0)


def oracle_din_hamiltonian_tf(d: Digraph, max_n: int = 8, slack: int = 0, cancel: CancelToken | None = None) -> int:
    """Exact DIN of a triangle-free Hamiltonian DAG with at most ``max_n`` vertices.

    With a Hamiltonian path all set sizes differ, so every color sits on a
    clique, and without triangles on one vertex or one edge.  DIN is then

        min  sum_v s(v) - sum_e x(e)
        s.t. s strictly increasing along the path, x(e) >= 1,
             sum of x(e) over the edges at v <= s(v).

    For each size vector the inner maximum over ``x`` is found exhaustively.
    Raising one ``s(v)`` by one raises the inner maximum by at most one, so
    the objective is monotone and the pointwise smallest feasible ``s`` is
    optimal; ``slack > 0`` additionally enumerates every size vector up to
    ``slack`` above that, as an audit of the monotonicity argument.
    """
    if d.n > max_n:
        raise GuardExceededError(f"oracle_din_hamiltonian_tf: {d.n} vertices > {max_n}")
    path = hamiltonian_path(d)
    if path is None:
        raise NoHamiltonianPathError()
    g = underlying_graph(d)
    tri = find_triangle(g)
    if tri is not None:
        raise NotTriangleFreeError(tri)
    ticker = _Ticker(cancel)
    sizes = [0] * d.n
    best: int | None = None

    def choose(i: int, prev: int) -> None:
        nonlocal best
        if i == len(path):
            load = _max_edge_load(g.edges, list(sizes), 1, ticker)
            if load is not None:
                total = sum(sizes) - load
                best = total if best is None else min(best, total)
            return
        v = path[i]
        lo = max(g.degree(v), prev + 1 if i else 0)
        for s in range(lo, lo + slack + 1):
            sizes[v] = s
            choose(i + 1, s)

    choose(0, 0)
    assert best is not None
    return best


def _maximal_cliques(g: Graph) -> list[int]:
    """Bron-Kerbosch with pivoting; cliques as bitsets."""
    out: list[int] = []

    def expand(r: int, p: int, x: int) -> None:
        if not p and not x:
            out.append(r)
            return
        pivot = max(bits(p | x), key=lambda u: (g.adj[u] & p).bit_count())
        for v in bits(p & ~g.adj[pivot]):
            expand(r | 1 << v, p & g.adj[v], x & g.adj[v])
            p &= ~(1 << v)
            x |= 1 << v

    expand(0, (1 << g.n) - 1, 0)
    return out


def oracle_ecc(g: Graph, max_edges: int = 12, cancel: CancelToken | None = None) -> int:
    """Minimum number of cliques covering every edge (the intersection number)."""
    if len(g.edges) > max_edges:
        raise GuardExceededError(f"oracle_ecc: {len(g.edges)} edges > {max_edges}")
    edges = g.edges
    cliques = [c for c in _maximal_cliques(g) if c.bit_count() >= 2]
    covers = []
    for c in cliques:
        cov = 0
        for i, (u, v) in enumerate(edges):
            if c >> u & 1 and c >> v & 1:
                cov |= 1 << i
        covers.append(cov)
    full = (1 << len(edges)) - 1
    best = len(edges)
    ticker = _Ticker(cancel)

    def search(covered: int, used: int) -> None:
        nonlocal best
        ticker.tick()
        if covered == full:
            best = min(best, used)
            return
        if used + 1 >= best:
            return
        first = (~covered & full) & -(~covered & full)
        for cov in covers:
            if cov & first:
                search(covered | cov, used + 1)

    search(0, 0)
    return best


def oracle_in_tiny(g: Graph, ell: Sequence[int], max_n: int = 5, max_demand: int = 3, cancel: CancelToken | None = None) -> int:
    """Exact demand-constrained intersection number of a tiny graph.

    Every color of an intersection representation sits on a clique, so a
    representation is a multiset of (not necessarily maximal) cliques that
    covers every edge and hits each vertex ``v`` at least ``l(v)`` times.
    """
    ell = check_vertex_function(ell, g.n, "demand")
    if g.n > max_n:
        raise GuardExceededError(f"oracle_in_tiny: {g.n} vertices > {max_n}")
    if any(x > max_demand for x in ell):
        raise GuardExceededError(f"oracle_in_tiny: demand {max(ell)} > {max_demand}")
    n = g.n
    edges = g.edges
    supports = []
    for mask in range(1, 1 << n):
        vs = bits(mask)
        if all(g.has_edge(u, v) for u, v in combinations(vs, 2)):
            cov = 0
            for i, (u, v) in enumerate(edges):
                if mask >> u & 1 and mask >> v & 1:
                    cov |= 1 << i
            supports.append((vs, cov))
    supports.sort(key=lambda s: (-len(s[0]), s[0]))
    suffix = [0] * (len(supports) + 1)
    for i in range(len(supports) - 1, -1, -1):
        suffix[i] = suffix[i + 1] | supports[i][1]
    full = (1 << len(edges)) - 1
    residual = list(ell)
    best = len(edges) + sum(max(ell[v] - g.degree(v), 0) for v in range(n))
    ticker = _Ticker(cancel)

    def search(i: int, used: int, covered: int) -> None:
        nonlocal best
        ticker.tick()
        if covered == full and max(residual, default=0) <= 0:
            best = min(best, used)
            return
        if i == len(supports) or full & ~covered & ~suffix[i]:
            return
        need = max(max(residual, default=0), 1 if covered != full else 0)
        if used + need >= best:
            return
        vs, cov = supports[i]
        search(i + 1, used, covered)
        m = 0
        while used + m + 1 < best:
            m += 1
            for v in vs:
                residual[v] -= 1
            search(i + 1, used + m, covered | cov)
        for v in vs:
            residual[v] += m

    search(0, 0, 0)
    return best
