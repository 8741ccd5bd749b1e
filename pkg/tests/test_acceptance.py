"""Acceptance criteria 1-8, one pass/fail line each.

Run with ``pytest tests/test_acceptance.py`` or directly with
``python3 tests/test_acceptance.py``.
"""

from __future__ import annotations

import random
import sys
import time
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from dinrep.constructions import (  # noqa: E402
    bipartite_din,
    capacity_from_demand,
    construct_wdin,
    din_hamiltonian_triangle_free,
    din_lower_bound,
    generic_din_construction,
)
from dinrep.formats import parse_instance  # noqa: E402
from dinrep.graph import Digraph, PosetGraph, bipartition, greedy_coloring, is_dag, min_chain_cover, underlying_graph  # noqa: E402
from dinrep.matching import bipartite_cover_certificate, brute_force_nu, max_weight_b_matching  # noqa: E402
from dinrep.oracles import oracle_din_hamiltonian_tf, oracle_din_tiny, oracle_in_tiny  # noqa: E402
from dinrep.representations import (  # noqa: E402
    SIZE_ORDER,
    Representation,
    verify_din,
    verify_ell_in,
    verify_poset_in,
    verify_uin,
    verify_wdin,
)
from instances import (  # noqa: E402
    admissible_digraph,
    bipartite_hamiltonian_dag,
    cocktail_party,
    random_connected_graph,
    random_dag,
    random_graph,
    random_representation,
    random_tf_graph,
    represented_digraph,
    sperner_representation,
    symmetric_of,
    tf_hamiltonian_dag,
)

FIG2 = Path(__file__).parent / "fixtures" / "fig2.json"
FIG2_B = (0, 5, 4, 6, 6, 8, 9, 10, 10, 12, 11, 15)


def _criterion2_instances() -> list[Digraph]:
    rng = random.Random(20240502)
    return [tf_hamiltonian_dag(rng, rng.randint(1, 8)) for _ in range(200)]


def criterion_1() -> tuple[bool, str]:
    start = time.perf_counter()
    d = parse_instance(FIG2.read_bytes()).digraph()
    res = din_hamiltonian_triangle_free(d)
    valid = verify_din(d, res.representation) is None
    elapsed = time.perf_counter() - start
    ok = (
        res.capacity == FIG2_B
        and sum(res.capacity) == 96
        and res.matching.weight == 40
        and res.value == 77
        and res.representation.universe_size == 77
        and valid
        and elapsed < 1.0
    )
    detail = (
        f"b={list(res.capacity)} b(V)={sum(res.capacity)} nu={res.matching.weight} "
        f"din={res.value} colors={res.representation.universe_size} verify_din={'ok' if valid else 'FAIL'} "
        f"time={elapsed:.3f}s (<1s)"
    )
    return ok, detail


def criterion_2() -> tuple[bool, str]:
    start = time.perf_counter()
    mismatches = tiny_checked = 0
    for d in _criterion2_instances():
        value = din_hamiltonian_triangle_free(d).value
        if value != oracle_din_hamiltonian_tf(d):
            mismatches += 1
        if d.n <= 4:
            tiny_checked += 1
            if value != oracle_din_tiny(d):
                mismatches += 1
    elapsed = time.perf_counter() - start
    ok = mismatches == 0 and elapsed < 60 and tiny_checked > 0
    return ok, f"200 instances, {tiny_checked} also vs tiny oracle, {mismatches} mismatches, time={elapsed:.1f}s (<60s)"


def criterion_3() -> tuple[bool, str]:
    rng = random.Random(3003)
    mismatches = bipartite = cover_failures = 0
    for _ in range(200):
        g = random_graph(rng, rng.randint(1, 8), max_edges=12)
        b = [rng.randint(0, 3) for _ in range(g.n)]
        m = max_weight_b_matching(g, b)
        if not m.is_feasible(g, b) or m.weight != brute_force_nu(g, b):
            mismatches += 1
        if bipartition(g) is not None:
            bipartite += 1
            cover = bipartite_cover_certificate(g, b, m)
            if sum(b[v] for v in cover) != m.weight or any(u not in cover and v not in cover for u, v in g.edges):
                cover_failures += 1
    ok = mismatches == 0 and cover_failures == 0 and bipartite > 0
    return ok, f"200 (G,b), {mismatches} mismatches; {bipartite} bipartite, {cover_failures} cover failures"


def criterion_4() -> tuple[bool, str]:
    rng = random.Random(4004)
    mismatches = 0
    for _ in range(100):
        g = random_tf_graph(rng, rng.randint(1, 5))
        ell = [rng.randint(0, 3) for _ in range(g.n)]
        b = capacity_from_demand(g, ell)
        if oracle_in_tiny(g, ell) != len(g.edges) + sum(b) - brute_force_nu(g, b):
            mismatches += 1
    return mismatches == 0, f"100 (G,l), {mismatches} mismatches"


def criterion_5() -> tuple[bool, str]:
    g = cocktail_party(10)
    r = sperner_representation()
    y = 1
    ell = [2] * g.n
    ell[y] = 3
    ell_ok = verify_ell_in(g, ell, r) is None
    rejected = 0
    for x in range(g.n):
        if x == y:
            continue
        bad = verify_poset_in(PosetGraph(g, Digraph(g.n, ((x, y),))), r)
        rejected += bad is not None and bad.kind == SIZE_ORDER
    ok = ell_ok and rejected == g.n - 1 and r.universe_size == 6
    return ok, f"verify_ell_in={'ok' if ell_ok else 'FAIL'}, size-order failure for {rejected}/{g.n - 1} choices of x < y"


def criterion_6() -> tuple[bool, str]:
    rng = random.Random(6006)
    # (a) weak representations of DAGs are strong ones
    a_fail = 0
    for t in range(500):
        if t % 2 == 0:
            d = random_dag(rng, rng.randint(1, 8))
            r = construct_wdin(d)
        else:
            while True:
                r = random_representation(rng, rng.randint(1, 7), rng.randint(1, 8), rng.uniform(0.1, 0.5))
                d = represented_digraph(r, strict=False)
                if is_dag(d):
                    break
        if verify_wdin(d, r) is not None or verify_din(d, r) is not None:
            a_fail += 1
    # (b) uniform on G iff weak on its symmetric digraph
    b_fail = 0
    verdicts = set()
    for t in range(200):
        g = random_connected_graph(rng, rng.randint(1, 7))
        if t % 2 == 0:
            r = construct_wdin(symmetric_of(g))
            v = rng.randrange(g.n)
            if rng.random() < 0.5 and r.assignment[v]:
                r = r.without(v, rng.choice(r.assignment[v]))
        else:
            r = random_representation(rng, g.n, rng.randint(1, 5), rng.uniform(0.2, 0.8))
        uin_ok = verify_uin(g, r) is None
        verdicts.add(uin_ok)
        b_fail += uin_ok != (verify_wdin(symmetric_of(g), r) is None)
    # (c) the weak construction verifies on admissible digraphs
    c_fail = 0
    for _ in range(200):
        d = admissible_digraph(rng, rng.randint(1, 10))
        c_fail += verify_wdin(d, construct_wdin(d)) is not None
    ok = a_fail == 0 and b_fail == 0 and c_fail == 0 and verdicts == {True, False}
    return ok, f"(a) {a_fail}/500 failures, (b) {b_fail}/200 disagreements, (c) {c_fail}/200 failures"


def criterion_7() -> tuple[bool, str]:
    rng = random.Random(7007)
    mismatches = 0
    for _ in range(100):
        d = bipartite_hamiltonian_dag(rng, rng.randint(1, 10))
        mismatches += bipartite_din(d).value != din_hamiltonian_triangle_free(d).value
    return mismatches == 0, f"100 bipartite instances, {mismatches} mismatches"


def _all_deletions_fail(d: Digraph, r: Representation) -> bool:
    return all(verify_din(d, r.without(v, c)) is not None for v in range(d.n) for c in r.assignment[v])


def criterion_8() -> tuple[bool, str]:
    sandwich_fail = mutation_fail = mutations = 0
    for d in _criterion2_instances():
        res = din_hamiltonian_triangle_free(d)
        generic = generic_din_construction(d)
        low = din_lower_bound(d, min_chain_cover(d), greedy_coloring(underlying_graph(d)))
        sandwich_fail += not low <= res.value <= generic.universe_size
        reps = [res.representation] + ([generic] if d.n >= 2 else [])
        for r in reps:
            mutations += sum(r.sizes)
            mutation_fail += not _all_deletions_fail(d, r)
    ok = sandwich_fail == 0 and mutation_fail == 0
    return ok, f"{sandwich_fail}/200 sandwich failures; {mutations} single deletions, {mutation_fail} reps with a surviving mutant"


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6, criterion_7, criterion_8]


def _report(i: int, ok: bool, detail: str) -> str:
    return f"criterion {i}: {'PASS' if ok else 'FAIL'}  {detail}"


@pytest.mark.parametrize("index", range(1, 9))
def test_criterion(index, capsys):
    ok, detail = CRITERIA[index - 1]()
    with capsys.disabled():
        print("\n" + _report(index, ok, detail))
    assert ok, detail


def main() -> int:
    failed = 0
    for i, criterion in enumerate(CRITERIA, 1):
        ok, detail = criterion()
        failed += not ok
        print(_report(i, ok, detail), flush=True)
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
