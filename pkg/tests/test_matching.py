import random
from itertools import combinations

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dinrep.errors import GuardExceededError, InputError, NotBipartiteError
from dinrep.graph import Graph, bipartition, underlying_graph
from dinrep.matching import (
    BMatching,
    bipartite_cover_certificate,
    brute_force_nu,
    max_cardinality_matching,
    max_weight_b_matching,
    max_weight_independent_set,
    min_weight_vertex_cover_bipartite,
)
from instances import random_graph, small_graphs
from test_graph import complete, cycle_graph, fig2

P3 = Graph(3, ((0, 1), (1, 2)))
EDGE = Graph(2, ((0, 1),))
STAR = Graph(4, ((0, 1), (0, 2), (0, 3)))
FIG2_B = (0, 5, 4, 6, 6, 8, 9, 10, 10, 12, 11, 15)


def test_solver_examples():
    assert max_weight_b_matching(EDGE, (2, 2)).weight == 2
    assert max_weight_b_matching(cycle_graph(5), (0,) * 5).weight == 0
    assert max_weight_b_matching(complete(3), (1, 1, 1)).weight == 1
    assert max_weight_b_matching(Graph(0, ()), ()).weight == 0


def test_fig2_solver_weight():
    g = underlying_graph(fig2())
    m = max_weight_b_matching(g, FIG2_B)
    assert m.weight == 40
    assert m.is_feasible(g, FIG2_B)


def test_solver_is_deterministic():
    rng = random.Random(3)
    g = random_graph(rng, 8)
    b = [rng.randint(0, 3) for _ in range(8)]
    assert max_weight_b_matching(g, b) == max_weight_b_matching(g, b)


def test_brute_force_examples():
    assert brute_force_nu(P3, (0, 0, 2)) == 0
    assert brute_force_nu(EDGE, (1, 3)) == 1
    assert brute_force_nu(cycle_graph(4), (1,) * 4) == 2


def test_brute_force_guards():
    with pytest.raises(GuardExceededError):
        brute_force_nu(complete(6), (1,) * 6)
    with pytest.raises(GuardExceededError):
        brute_force_nu(EDGE, (5, 1))


def test_cover_examples():
    m = max_weight_b_matching(EDGE, (2, 2))
    cover = bipartite_cover_certificate(EDGE, (2, 2), m)
    assert len(cover) == 1 and sum((2, 2)[v] for v in cover) == 2
    cover = bipartite_cover_certificate(P3, (0, 0, 2), max_weight_b_matching(P3, (0, 0, 2)))
    assert sum((0, 0, 2)[v] for v in cover) == 0
    assert bipartite_cover_certificate(STAR, (1, 1, 1, 1), max_weight_b_matching(STAR, (1,) * 4)) == [0]


def test_cover_rejects_bad_input():
    with pytest.raises(NotBipartiteError):
        min_weight_vertex_cover_bipartite(complete(3), (1, 1, 1))
    with pytest.raises(InputError):
        bipartite_cover_certificate(EDGE, (2, 2), BMatching(EDGE.edges, (1,)))
    with pytest.raises(InputError):
        bipartite_cover_certificate(EDGE, (1, 1), BMatching(EDGE.edges, (2,)))


def test_independent_set_examples():
    assert max_weight_independent_set(Graph(3, ()), (1, 2, 3))[0] == 6
    assert max_weight_independent_set(EDGE, (0, 1)) == (1, [1])
    assert max_weight_independent_set(P3, (0, 0, 2))[0] == 2
    assert max_weight_independent_set(cycle_graph(5), (1,) * 5)[0] == 2


def test_independent_set_guard():
    with pytest.raises(GuardExceededError):
        max_weight_independent_set(complete(3), (1, 1, 1), max_general=2)


@settings(max_examples=200)
@given(small_graphs(max_n=8), st.data())
def test_matching_matches_networkx(g, data):
    adj = [sorted(g.neighbors(v)) for v in range(g.n)]
    mate = max_cardinality_matching(adj)
    assert all(mate[mate[v]] == v and g.has_edge(v, mate[v]) for v in range(g.n) if mate[v] != -1)
    size = sum(1 for v in range(g.n) if mate[v] > v)
    nxg = nx.Graph(list(g.edges))
    assert size == len(nx.max_weight_matching(nxg, maxcardinality=True))


@settings(max_examples=200)
@given(small_graphs(max_n=8, max_edges=12), st.data())
def test_solver_equals_brute_force(g, data):
    b = data.draw(st.lists(st.integers(0, 3), min_size=g.n, max_size=g.n))
    m = max_weight_b_matching(g, b)
    assert m.is_feasible(g, b)
    assert m.weight == brute_force_nu(g, b)


@settings(max_examples=100)
@given(small_graphs(max_n=7, max_edges=12), st.data())
def test_nu_is_monotone_in_capacity(g, data):
    b = data.draw(st.lists(st.integers(0, 3), min_size=g.n, max_size=g.n))
    v = data.draw(st.integers(0, g.n - 1))
    bigger = list(b)
    bigger[v] += 1
    assert max_weight_b_matching(g, bigger).weight >= max_weight_b_matching(g, b).weight


def test_large_capacities_are_capped():
    g = Graph(3, ((0, 1), (1, 2)))
    assert max_weight_b_matching(g, (100, 100, 100)).weight == 100


def test_bipartite_duality_and_independence_identity():
    rng = random.Random(11)
    seen = 0
    while seen < 60:
        g = random_graph(rng, rng.randint(2, 9))
        if bipartition(g) is None:
            continue
        seen += 1
        b = [rng.randint(0, 4) for _ in range(g.n)]
        m = max_weight_b_matching(g, b)
        cover = bipartite_cover_certificate(g, b, m)
        assert all(u in cover or v in cover for u, v in g.edges)
        assert sum(b[v] for v in cover) == m.weight
        alpha, witness = max_weight_independent_set(g, b)
        assert alpha == sum(b) - m.weight
        assert all(not g.has_edge(u, v) for u, v in combinations(witness, 2))
        assert sum(b[v] for v in witness) == alpha


@settings(max_examples=100)
@given(small_graphs(max_n=8), st.data())
def test_independent_set_against_enumeration(g, data):
    f = data.draw(st.lists(st.integers(0, 4), min_size=g.n, max_size=g.n))
    best = 0
    for mask in range(1 << g.n):
        vs = [v for v in range(g.n) if mask >> v & 1]
        if all(not g.has_edge(u, v) for u, v in combinations(vs, 2)):
            best = max(best, sum(f[v] for v in vs))
    value, witness = max_weight_independent_set(g, f)
    assert value == best == sum(f[v] for v in witness)
