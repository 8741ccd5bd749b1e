"""Instance, representation and certificate files, plus DOT export.

Instances are JSON objects::

    {"directed":true,"n":3,"arcs":[[0,1],[1,2]]}
    {"directed":false,"n":3,"edges":[[0,1]],"demands":[1,1,0],"order_arcs":[[0,2]]}

or a plain edge list (``#`` starts a comment)::

    directed 3
    0 1
    1 2
    demands 1 2 3        # optional, also: capacities ...
    order 0 2            # optional order arc

Canonical emission is compact JSON with a fixed key order and every pair
list sorted, so equal instances serialize to identical bytes.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Any

from .constructions import DinResult, path_capacity
from .errors import InstanceFormatError
from .graph import Digraph, Graph, PosetGraph, bipartition, is_dag, scc_decomposition, underlying_graph
from .matching import bipartite_cover_certificate
from .representations import Representation

Pair = tuple[int, int]
_KEYS = ("directed", "n", "arcs", "edges", "demands", "capacities", "order_arcs")


@dataclass(frozen=True)
class InstanceFile:
    directed: bool
    n: int
    pairs: tuple[Pair, ...]
    demands: tuple[int, ...] | None = None
    capacities: tuple[int, ...] | None = None
    order_arcs: tuple[Pair, ...] | None = None

    def digraph(self) -> Digraph:
        if not self.directed:
            raise InstanceFormatError("directed", "instance is undirected; a digraph is required")
        return Digraph(self.n, self.pairs)

    def graph(self) -> Graph:
        """The graph itself, or the underlying graph of a digraph."""
        if self.directed:
            return underlying_graph(Digraph(self.n, self.pairs))
        return Graph(self.n, self.pairs)

    def poset(self) -> PosetGraph:
        """Ordered graph: explicit ``order_arcs``, else a digraph's own reachability."""
        if self.order_arcs is not None:
            return PosetGraph(self.graph(), Digraph(self.n, self.order_arcs))
        if self.directed:
            return PosetGraph(self.graph(), Digraph(self.n, self.pairs))
        return PosetGraph(self.graph())


def _is_int(x: Any) -> bool:
    return isinstance(x, int) and not isinstance(x, bool)


def _pairs(raw: Any, field: str, n: int, unordered: bool) -> tuple[Pair, ...]:
    if not isinstance(raw, list):
        raise InstanceFormatError(field, "expected a list of pairs")
    seen: set[Pair] = set()
    out = []
    for i, item in enumerate(raw):
        loc = f"{field}[{i}]"
        if not (isinstance(item, list) and len(item) == 2):
            raise InstanceFormatError(loc, "expected a pair [u, v]")
        for j, x in enumerate(item):
            if not _is_int(x):
                raise InstanceFormatError(f"{loc}[{j}]", "expected an integer")
            if not 0 <= x < n:
                raise InstanceFormatError(f"{loc}[{j}]", f"index {x} out of range (n = {n})")
        u, v = item
        if u == v:
            raise InstanceFormatError(loc, f"loop at vertex {u}")
        key = (min(u, v), max(u, v)) if unordered else (u, v)
        if key in seen:
            raise InstanceFormatError(loc, f"duplicate pair {list(item)}")
        seen.add(key)
        out.append(key)
    return tuple(sorted(out))


def _values(raw: Any, field: str, n: int) -> tuple[int, ...]:
    if not isinstance(raw, list):
        raise InstanceFormatError(field, "expected a list of integers")
    if len(raw) != n:
        raise InstanceFormatError(field, f"length {len(raw)} does not match n = {n}")
    for i, x in enumerate(raw):
        if not _is_int(x) or x < 0:
            raise InstanceFormatError(f"{field}[{i}]", "expected a nonnegative integer")
    return tuple(raw)


def _from_mapping(obj: Any) -> InstanceFile:
    if not isinstance(obj, dict):
        raise InstanceFormatError("$", "expected a JSON object")
    for key in obj:
        if key not in _KEYS:
            raise InstanceFormatError(key, "unknown field")
    if not isinstance(obj.get("directed"), bool):
        raise InstanceFormatError("directed", "required boolean field")
    n = obj.get("n")
    if not _is_int(n) or n < 0:
        raise InstanceFormatError("n", "required nonnegative integer field")
    directed = obj["directed"]
    field, other = ("arcs", "edges") if directed else ("edges", "arcs")
    if other in obj:
        raise InstanceFormatError(other, f"not allowed when directed is {str(directed).lower()}")
    pairs = _pairs(obj.get(field, []), field, n, unordered=not directed)
    inst = InstanceFile(
        directed,
        n,
        pairs,
        _values(obj["demands"], "demands", n) if "demands" in obj else None,
        _values(obj["capacities"], "capacities", n) if "capacities" in obj else None,
        _pairs(obj["order_arcs"], "order_arcs", n, unordered=False) if "order_arcs" in obj else None,
    )
    if inst.order_arcs is not None and not is_dag(Digraph(n, inst.order_arcs)):
        raise InstanceFormatError("order_arcs", "order arcs contain a cycle")
    return inst


def _parse_text(text: str) -> InstanceFile:
    obj: dict[str, Any] = {}
    pairs: list[list[int]] = []
    order: list[list[int]] = []
    for lineno, line in enumerate(text.splitlines(), 1):
        tokens = line.split("#", 1)[0].split()
        if not tokens:
            continue
        loc = f"line {lineno}"
        head = tokens[0]
        try:
            if head in ("directed", "undirected"):
                if "n" in obj:
                    raise InstanceFormatError(loc, "second header line")
                if len(tokens) != 2:
                    raise InstanceFormatError(loc, f"expected '{head} N'")
                obj["directed"] = head == "directed"
                obj["n"] = int(tokens[1])
            elif "n" not in obj:
                raise InstanceFormatError(loc, "missing 'directed N' or 'undirected N' header")
            elif head in ("demands", "capacities"):
                obj[head] = [int(t) for t in tokens[1:]]
            elif head == "order":
                if len(tokens) != 3:
                    raise InstanceFormatError(loc, "expected 'order u v'")
                order.append([int(tokens[1]), int(tokens[2])])
            else:
                if len(tokens) != 2:
                    raise InstanceFormatError(loc, "expected a pair 'u v'")
                pairs.append([int(tokens[0]), int(tokens[1])])
        except ValueError as exc:
            if isinstance(exc, InstanceFormatError):
                raise
            raise InstanceFormatError(loc, "expected integers") from None
    if "n" not in obj:
        raise InstanceFormatError("line 1", "empty instance")
    obj["arcs" if obj["directed"] else "edges"] = pairs
    if order:
        obj["order_arcs"] = order
    return _from_mapping(obj)


def parse_instance(data: bytes | str) -> InstanceFile:
    """Parse either format; JSON is recognized by a leading ``{`` or ``[``."""
    text = data.decode("utf-8") if isinstance(data, bytes) else data
    if text.lstrip().startswith(("{", "[")):
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InstanceFormatError(f"line {exc.lineno}, column {exc.colno}", exc.msg) from None
        return _from_mapping(obj)
    return _parse_text(text)


def _dumps(obj: Any) -> bytes:
    return json.dumps(obj, separators=(",", ":")).encode("utf-8")


def emit_instance(inst: InstanceFile) -> bytes:
    obj: dict[str, Any] = {"directed": inst.directed, "n": inst.n}
    obj["arcs" if inst.directed else "edges"] = [list(p) for p in sorted(inst.pairs)]
    if inst.demands is not None:
        obj["demands"] = list(inst.demands)
    if inst.capacities is not None:
        obj["capacities"] = list(inst.capacities)
    if inst.order_arcs is not None:
        obj["order_arcs"] = [list(p) for p in sorted(inst.order_arcs)]
    return _dumps(obj)


def instance_from_digraph(d: Digraph, **extra: Any) -> InstanceFile:
    return InstanceFile(True, d.n, d.arcs, **extra)


def instance_from_graph(g: Graph, **extra: Any) -> InstanceFile:
    return InstanceFile(False, g.n, g.edges, **extra)


def parse_vertex_function(data: bytes | str, n: int, name: str) -> tuple[int, ...]:
    """A bare JSON list, or an object holding the list under ``name`` or ``"values"``."""
    text = data.decode("utf-8") if isinstance(data, bytes) else data
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InstanceFormatError(f"line {exc.lineno}, column {exc.colno}", exc.msg) from None
    if isinstance(obj, dict):
        key = name if name in obj else "values"
        if key not in obj:
            raise InstanceFormatError(name, "missing field")
        return _values(obj[key], key, n)
    return _values(obj, name, n)


def emit_representation(r: Representation) -> bytes:
    return _dumps({"colors": r.universe_size, "assignment": [list(cs) for cs in r.assignment]})


def parse_representation(data: bytes | str) -> Representation:
    text = data.decode("utf-8") if isinstance(data, bytes) else data
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InstanceFormatError(f"line {exc.lineno}, column {exc.colno}", exc.msg) from None
    if not isinstance(obj, dict):
        raise InstanceFormatError("$", "expected a JSON object")
    k = obj.get("colors")
    if not _is_int(k) or k < 0:
        raise InstanceFormatError("colors", "required nonnegative integer field")
    sets = obj.get("assignment")
    if not isinstance(sets, list):
        raise InstanceFormatError("assignment", "required list of color lists")
    out = []
    for v, cs in enumerate(sets):
        if not isinstance(cs, list):
            raise InstanceFormatError(f"assignment[{v}]", "expected a list of colors")
        for j, c in enumerate(cs):
            if not _is_int(c) or not 0 <= c < k:
                raise InstanceFormatError(f"assignment[{v}][{j}]", f"color must be an integer in 0..{k - 1}")
        if len(set(cs)) != len(cs):
            raise InstanceFormatError(f"assignment[{v}]", "repeated color")
        out.append(tuple(cs))
    return Representation(k, tuple(out))


# -- certificates -------------------------------------------------------------


def din_certificate(d: Digraph, result: DinResult) -> dict[str, Any]:
    """Everything needed to re-check ``value = |A| + b(V) - nu`` without a matching solver."""
    g = underlying_graph(d)
    cover = None
    if bipartition(g) is not None:
        cover = bipartite_cover_certificate(g, result.capacity, result.matching)
    return {
        "kind": "din",
        "value": result.value,
        "arcs": len(d.arcs),
        "path": list(result.path),
        "b": list(result.capacity),
        "b_total": sum(result.capacity),
        "matching": [[u, v, x] for (u, v), x in zip(result.matching.edges, result.matching.x) if x],
        "nu": result.matching.weight,
        "cover": cover,
    }


def check_din_certificate(d: Digraph, cert: dict[str, Any]) -> list[str]:
    """Independent arithmetic re-check of a DIN certificate; returns the problems found.

    When ``cover`` is present it must be a vertex cover whose ``b``-weight
    equals ``nu``, which proves the matching optimal (weak duality).
    """
    problems = []
    g = underlying_graph(d)
    path = cert.get("path", [])
    if sorted(path) != list(range(d.n)) or any(not d.has_arc(u, v) for u, v in zip(path, path[1:])):
        problems.append("path is not a Hamiltonian path")
    b = cert["b"]
    if len(path) == d.n and list(path_capacity(g, path)) != list(b):
        problems.append("b does not follow the path recurrence")
    load = [0] * d.n
    total = 0
    for u, v, x in cert["matching"]:
        if not g.has_edge(u, v) or x < 0:
            problems.append(f"matching uses non-edge or negative multiplicity at ({u}, {v})")
            continue
        load[u] += x
        load[v] += x
        total += x
    if any(load[v] > b[v] for v in range(d.n)):
        problems.append("matching exceeds a vertex capacity")
    if total != cert["nu"]:
        problems.append("nu is not the matching weight")
    if cert["b_total"] != sum(b):
        problems.append("b_total is not the sum of b")
    if cert["value"] != len(d.arcs) + sum(b) - total:
        problems.append("value != |A| + b(V) - nu")
    cover = cert.get("cover")
    if cover is not None:
        cs = set(cover)
        if any(u not in cs and v not in cs for u, v in g.edges):
            problems.append("cover misses an edge")
        elif sum(b[v] for v in cs) != total:
            problems.append("cover weight differs from nu")
    return problems


# -- DOT ------------------------------------------------------------------------


def graph_to_dot(g: Graph, name: str = "G") -> str:
    lines = [f"graph {name} {{"]
    lines += [f"  {v};" for v in range(g.n)]
    lines += [f"  {u} -- {v};" for u, v in g.edges]
    lines.append("}")
    return "\n".join(lines) + "\n"


def condensation_to_dot(d: Digraph, name: str = "condensation") -> str:
    comp, components = scc_decomposition(d)
    lines = [f"digraph {name} {{"]
    for i, members in enumerate(components):
        lines.append(f'  c{i} [label="{",".join(map(str, members))}"];')
    cross = sorted({(comp[u], comp[v]) for u, v in d.arcs if comp[u] != comp[v]})
    lines += [f"  c{a} -> c{b};" for a, b in cross]
    lines.append("}")
    return "\n".join(lines) + "\n"
