import json
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from dinrep.constructions import din_hamiltonian_triangle_free
from dinrep.errors import InstanceFormatError
from dinrep.formats import (
    InstanceFile,
    check_din_certificate,
    condensation_to_dot,
    din_certificate,
    emit_instance,
    emit_representation,
    graph_to_dot,
    instance_from_digraph,
    parse_instance,
    parse_representation,
    parse_vertex_function,
)
from dinrep.graph import Digraph, Graph
from dinrep.representations import Representation
from instances import bipartite_hamiltonian_dag, small_dags, small_graphs, tf_hamiltonian_dag
from test_graph import FIG2, fig2


def test_minimal_digraph_round_trips_byte_identically():
    raw = b'{"directed":true,"n":2,"arcs":[[0,1]]}'
    inst = parse_instance(raw)
    assert inst == InstanceFile(True, 2, ((0, 1),))
    assert emit_instance(inst) == raw


def test_fig2_fixture():
    inst = parse_instance(FIG2.read_bytes())
    assert inst.n == 12 and len(inst.pairs) == 21
    assert inst.digraph() == fig2()


def test_canonical_form_sorts_and_orders_keys():
    raw = '{"order_arcs":[[1,2],[0,1]],"n":3,"edges":[[2,1],[0,1]],"directed":false,"demands":[1,2,3]}'
    out = emit_instance(parse_instance(raw))
    assert out == b'{"directed":false,"n":3,"edges":[[0,1],[1,2]],"demands":[1,2,3],"order_arcs":[[0,1],[1,2]]}'


@pytest.mark.parametrize(
    "raw, locus",
    [
        ('{"directed":true,"n":2,"arcs":[[0,1],[0,1]]}', "arcs[1]"),
        ('{"directed":false,"n":2,"edges":[[0,1],[1,0]]}', "edges[1]"),
        ('{"directed":true,"n":2,"arcs":[[0,2]]}', "arcs[0][1]"),
        ('{"directed":true,"n":2,"arcs":[[0,0]]}', "arcs[0]"),
        ('{"directed":true,"n":2,"arcs":[],"demands":[1]}', "demands"),
        ('{"directed":true,"n":2,"arcs":[],"capacities":[1,-1]}', "capacities[1]"),
        ('{"directed":true,"n":2,"edges":[]}', "edges"),
        ('{"directed":"yes","n":2}', "directed"),
        ('{"directed":true,"n":true}', "n"),
        ('{"directed":true,"n":2,"colour":1}', "colour"),
        ('{"directed":false,"n":2,"order_arcs":[[0,1],[1,0]]}', "order_arcs"),
        ('[1, 2]', "$"),
        ('{"directed":true,\n "n":2,]', "line 2, column 8"),
    ],
)
def test_parse_errors_are_positioned(raw, locus):
    with pytest.raises(InstanceFormatError) as info:
        parse_instance(raw)
    assert info.value.locus == locus


def test_text_format():
    text = "# a path\ndirected 3\n0 1\n1 2   # second arc\n\ndemands 1 2 3\norder 0 2\n"
    inst = parse_instance(text)
    assert inst == InstanceFile(True, 3, ((0, 1), (1, 2)), demands=(1, 2, 3), order_arcs=((0, 2),))
    assert parse_instance("undirected 2\n0 1\n").graph() == Graph(2, ((0, 1),))


@pytest.mark.parametrize(
    "text, locus",
    [
        ("0 1\n", "line 1"),
        ("directed 2\n0 x\n", "line 2"),
        ("directed 2\n0 1 2\n", "line 2"),
        ("directed 2\n0 1\n0 1\n", "arcs[1]"),
        ("directed 2\n0 5\n", "arcs[0][1]"),
        ("", "line 1"),
        ("directed 2\ndirected 2\n", "line 2"),
    ],
)
def test_text_errors(text, locus):
    with pytest.raises(InstanceFormatError) as info:
        parse_instance(text)
    assert info.value.locus == locus


@given(small_dags(max_n=6), st.booleans())
def test_round_trip_and_idempotence(d, undirected):
    if undirected:
        inst = InstanceFile(False, d.n, tuple(sorted({(min(u, v), max(u, v)) for u, v in d.arcs})))
    else:
        inst = instance_from_digraph(d, demands=tuple(range(d.n)))
    once = emit_instance(inst)
    assert parse_instance(once) == inst
    assert emit_instance(parse_instance(once)) == once


def test_representation_io():
    r = Representation.from_sets(4, [[3, 0], [], [1]])
    raw = emit_representation(r)
    assert raw == b'{"colors":4,"assignment":[[0,3],[],[1]]}'
    assert parse_representation(raw) == r
    for bad, locus in (
        ('{"colors":2,"assignment":[[2]]}', "assignment[0][0]"),
        ('{"colors":2,"assignment":[[1,1]]}', "assignment[0]"),
        ('{"assignment":[]}', "colors"),
        ('{"colors":1}', "assignment"),
    ):
        with pytest.raises(InstanceFormatError) as info:
            parse_representation(bad)
        assert info.value.locus == locus


def test_vertex_function_files():
    assert parse_vertex_function("[1,2]", 2, "demands") == (1, 2)
    assert parse_vertex_function('{"demands":[1,2]}', 2, "demands") == (1, 2)
    assert parse_vertex_function('{"values":[0,0]}', 2, "capacities") == (0, 0)
    with pytest.raises(InstanceFormatError):
        parse_vertex_function("[1]", 2, "demands")


def test_certificates_check_out():
    rng = random.Random(31)
    for make in (tf_hamiltonian_dag, bipartite_hamiltonian_dag):
        for _ in range(30):
            d = make(rng, rng.randint(1, 9))
            cert = din_certificate(d, din_hamiltonian_triangle_free(d))
            json.dumps(cert)
            assert check_din_certificate(d, cert) == []
            if make is bipartite_hamiltonian_dag:
                assert cert["cover"] is not None


def test_tampered_certificates_are_caught():
    d = fig2()
    cert = din_certificate(d, din_hamiltonian_triangle_free(d))
    assert check_din_certificate(d, cert) == []
    assert check_din_certificate(d, {**cert, "value": 76})
    assert check_din_certificate(d, {**cert, "nu": 41})
    b = list(cert["b"])
    b[3] += 1
    assert check_din_certificate(d, {**cert, "b": b, "b_total": sum(b)})
    assert check_din_certificate(d, {**cert, "matching": [[0, 1, 1]] + cert["matching"]})


def test_dot_export():
    g = Graph(3, ((0, 1),))
    assert graph_to_dot(g) == "graph G {\n  0;\n  1;\n  2;\n  0 -- 1;\n}\n"
    d = Digraph(3, ((0, 1), (1, 0), (1, 2)))
    assert condensation_to_dot(d) == 'digraph condensation {\n  c0 [label="0,1"];\n  c1 [label="2"];\n  c0 -> c1;\n}\n'


@given(small_graphs(max_n=6))
def test_dot_is_deterministic(g):
    assert graph_to_dot(g) == graph_to_dot(Graph(g.n, tuple(reversed(g.edges))))
