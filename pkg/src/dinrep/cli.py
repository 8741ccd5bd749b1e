"""Command-line interface.

Every subcommand prints one compact JSON line per instance file on stdout;
``--human`` adds a short readable summary.  Exit codes: 0 success,
1 verification failure, 2 input error, 3 oracle guard exceeded.  With several
files the worst code wins, and output always follows the order of the files.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Callable, Sequence

from . import constructions as cons
from . import oracles
from .errors import DinrepError, GuardExceededError, InputError
from .formats import (
    InstanceFile,
    condensation_to_dot,
    din_certificate,
    emit_representation,
    graph_to_dot,
    parse_instance,
    parse_representation,
    parse_vertex_function,
)
from .graph import (
    greedy_coloring,
    hamiltonian_path,
    is_bipartite,
    is_dag,
    is_diamond_free,
    is_triangle_free,
    min_chain_cover,
    scc_decomposition,
    underlying_graph,
)
from .matching import bipartite_cover_certificate, brute_force_nu, max_weight_b_matching
from .representations import (
    verify_din,
    verify_ell_in,
    verify_in,
    verify_poset_in,
    verify_uin,
    verify_wdin,
)

OK, VERIFY_FAILED, INPUT_ERROR, GUARD_EXCEEDED = 0, 1, 2, 3


@dataclass
class Outcome:
    code: int
    line: str | None = None
    summary: str | None = None
    error: str | None = None


def _line(payload: dict[str, Any]) -> str:
    return json.dumps(payload, separators=(",", ":"))


def _load(path: str) -> InstanceFile:
    return parse_instance(Path(path).read_bytes())


def _write(path: str, data: bytes) -> None:
    Path(path).write_bytes(data)


def _vertex_function(opt: str | None, inst: InstanceFile, field: str) -> tuple[int, ...]:
    if opt is not None:
        return parse_vertex_function(Path(opt).read_bytes(), inst.n, field)
    own = getattr(inst, field)
    if own is None:
        raise InputError(f"no {field}: pass --{field} PATH or add a '{field}' field to the instance")
    return own


# -- subcommands: each returns (payload, summary, exit code) ------------------


def _analyze(args: argparse.Namespace, inst: InstanceFile) -> tuple[dict, str, int]:
    g = inst.graph()
    out: dict[str, Any] = {"n": inst.n, "pairs": len(inst.pairs), "directed": inst.directed}
    if inst.directed:
        d = inst.digraph()
        dag = is_dag(d)
        out["dag"] = dag
        out["hamiltonian"] = dag and hamiltonian_path(d) is not None
        out["scc_count"] = len(scc_decomposition(d)[1])
    out["triangle_free"] = is_triangle_free(g)
    out["diamond_free"] = is_diamond_free(g)
    out["bipartite"] = is_bipartite(g)
    flags = ", ".join(k for k, v in out.items() if v is True and k != "directed")
    return out, f"{inst.n} vertices; {flags or 'no properties'}", OK


def _din(args: argparse.Namespace, inst: InstanceFile) -> tuple[dict, str, int]:
    d = inst.digraph()
    res = cons.din_hamiltonian_triangle_free(d)
    out: dict[str, Any] = {
        "value": res.value,
        "b": list(res.capacity),
        "b_total": sum(res.capacity),
        "nu": res.matching.weight,
        "arcs": len(d.arcs),
    }
    if args.certificate:
        out["certificate"] = din_certificate(d, res)
    if args.emit_rep:
        _write(args.emit_rep, emit_representation(res.representation))
    return out, f"din = {res.value} = {len(d.arcs)} + {sum(res.capacity)} - {res.matching.weight}", OK


def _poset_in(args: argparse.Namespace, inst: InstanceFile) -> tuple[dict, str, int]:
    p = inst.poset()
    res = cons.poset_in_triangle_free(p)
    if args.emit_rep:
        _write(args.emit_rep, emit_representation(res.representation))
    out = {"value": res.value, "demand": list(cons.alpha_ranking(p)), "b": list(cons.poset_capacity(p))}
    return out, f"poset intersection number = {res.value}", OK


def _ell_in(args: argparse.Namespace, inst: InstanceFile) -> tuple[dict, str, int]:
    g = inst.graph()
    ell = _vertex_function(args.demands, inst, "demands")
    res = cons.ell_constrained_in_triangle_free(g, ell)
    if args.emit_rep:
        _write(args.emit_rep, emit_representation(res.representation))
    b = cons.capacity_from_demand(g, ell)
    out = {"value": res.value, "b": list(b), "nu": res.matching.weight}
    return out, f"demand-constrained intersection number = {res.value}", OK


def _wdin(args: argparse.Namespace, inst: InstanceFile) -> tuple[dict, str, int]:
    rep = cons.construct_wdin(inst.digraph())
    if args.emit_rep:
        _write(args.emit_rep, emit_representation(rep))
    out = {"colors": rep.universe_size, "optimal": False, "sizes": list(rep.sizes)}
    return out, f"weak representation with {rep.universe_size} colors (upper bound, not optimal)", OK


def _bmatch(args: argparse.Namespace, inst: InstanceFile) -> tuple[dict, str, int]:
    g = inst.graph()
    b = _vertex_function(args.capacities, inst, "capacities")
    m = max_weight_b_matching(g, b)
    out: dict[str, Any] = {
        "nu": m.weight,
        "matching": [[u, v, x] for (u, v), x in zip(m.edges, m.x) if x],
        "cover": bipartite_cover_certificate(g, b, m) if is_bipartite(g) else None,
    }
    return out, f"maximum b-matching weight = {m.weight}", OK


def _verify(args: argparse.Namespace, inst: InstanceFile) -> tuple[dict, str, int]:
    rep = parse_representation(Path(args.rep).read_bytes())
    kind = args.kind
    if kind == "in":
        bad = verify_in(inst.graph(), rep)
    elif kind == "ell":
        bad = verify_ell_in(inst.graph(), _vertex_function(args.demands, inst, "demands"), rep)
    elif kind == "poset":
        bad = verify_poset_in(inst.poset(), rep)
    elif kind == "din":
        bad = verify_din(inst.digraph(), rep)
    elif kind == "wdin":
        bad = verify_wdin(inst.digraph(), rep)
    else:
        bad = verify_uin(inst.graph(), rep)
    if bad is None:
        return {"ok": True, "kind": kind}, f"valid {kind} representation", OK
    out = {"ok": False, "kind": kind, "violation": {"kind": bad.kind, "vertices": list(bad.vertices)}}
    return out, f"invalid: {bad.kind} at {list(bad.vertices)}", VERIFY_FAILED


def _oracle(args: argparse.Namespace, inst: InstanceFile) -> tuple[dict, str, int]:
    which = args.which
    if which == "din":
        value = oracles.oracle_din_tiny(inst.digraph(), max_n=args.max_n or 4)
    elif which == "din-ham":
        value = oracles.oracle_din_hamiltonian_tf(inst.digraph(), max_n=args.max_n or 8)
    elif which == "in":
        g = inst.graph()
        value = oracles.oracle_in_tiny(g, _vertex_function(args.demands, inst, "demands"), max_n=args.max_n or 5)
    elif which == "ecc":
        value = oracles.oracle_ecc(inst.graph())
    else:
        value = brute_force_nu(inst.graph(), _vertex_function(args.capacities, inst, "capacities"))
    return {"oracle": which, "value": value}, f"oracle {which} = {value}", OK


def _bound(args: argparse.Namespace, inst: InstanceFile) -> tuple[dict, str, int]:
    d = inst.digraph()
    chains = min_chain_cover(d)
    coloring = greedy_coloring(underlying_graph(d))
    lower = cons.din_lower_bound(d, chains, coloring)
    upper = cons.generic_din_construction(d).universe_size
    exact = cons.din_of_dag_if_tractable(d)
    out = {
        "lower": lower,
        "upper": upper,
        "exact": exact.value if exact else None,
        "chains": chains,
        "colors": coloring[0],
    }
    return out, f"{lower} <= din <= {upper}", OK


def _export_dot(args: argparse.Namespace, inst: InstanceFile) -> tuple[dict, str, int]:
    if args.condensation:
        text = condensation_to_dot(inst.digraph())
    else:
        text = graph_to_dot(inst.graph())
    if args.output:
        _write(args.output, text.encode("utf-8"))
        return {"written": args.output}, f"wrote {args.output}", OK
    return {"dot": text}, text.rstrip("\n"), OK


COMMANDS: dict[str, Callable[[argparse.Namespace, InstanceFile], tuple[dict, str, int]]] = {
    "analyze": _analyze,
    "din": _din,
    "poset-in": _poset_in,
    "ell-in": _ell_in,
    "wdin": _wdin,
    "bmatch": _bmatch,
    "verify": _verify,
    "oracle": _oracle,
    "bound": _bound,
    "export-dot": _export_dot,
}


def run_one(args: argparse.Namespace, path: str) -> Outcome:
    """Run one subcommand on one file; never raises for expected failures."""
    try:
        inst = _load(path)
        payload, summary, code = COMMANDS[args.command](args, inst)
    except GuardExceededError as exc:
        return Outcome(GUARD_EXCEEDED, error=f"{path}: guard exceeded: {exc}")
    except (InputError, OSError) as exc:
        return Outcome(INPUT_ERROR, error=f"{path}: {exc}")
    except DinrepError as exc:
        return Outcome(INPUT_ERROR, error=f"{path}: {exc}")
    if len(args.files) > 1:
        payload = {"file": path, **payload}
    return Outcome(code, _line(payload), summary)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dinrep", description=__doc__.split("\n\n")[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("files", nargs="+", metavar="FILE", help="instance file (JSON or edge list)")
    common.add_argument("--human", action="store_true", help="also print a readable summary")
    common.add_argument("--jobs", type=int, default=1, help="worker processes for several files")
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("analyze", parents=[common], help="structural properties")
    p = sub.add_parser("din", parents=[common], help="directed intersection number (triangle-free Hamiltonian DAG)")
    p.add_argument("--emit-rep", metavar="PATH")
    p.add_argument("--certificate", action="store_true", help="include a re-checkable certificate")
    p = sub.add_parser("poset-in", parents=[common], help="optimal representation of a triangle-free ordered graph")
    p.add_argument("--emit-rep", metavar="PATH")
    p = sub.add_parser("ell-in", parents=[common], help="demand-constrained intersection number")
    p.add_argument("--demands", metavar="PATH")
    p.add_argument("--emit-rep", metavar="PATH")
    p = sub.add_parser("wdin", parents=[common], help="weak representation (valid, not optimal)")
    p.add_argument("--emit-rep", metavar="PATH")
    p = sub.add_parser("bmatch", parents=[common], help="maximum b-matching")
    p.add_argument("--capacities", metavar="PATH")
    p = sub.add_parser("verify", parents=[common], help="check a representation")
    p.add_argument("--rep", metavar="PATH", required=True)
    p.add_argument("--kind", choices=["in", "ell", "poset", "din", "wdin", "uin"], required=True)
    p.add_argument("--demands", metavar="PATH")
    p = sub.add_parser("oracle", help="exhaustive solvers for tiny instances")
    p.add_argument("which", choices=["din", "din-ham", "in", "ecc", "nu"])
    for action in common._actions:
        p._add_action(action)
    p.add_argument("--demands", metavar="PATH")
    p.add_argument("--capacities", metavar="PATH")
    p.add_argument("--max-n", type=int, default=None, help="raise the vertex guard")
    sub.add_parser("bound", parents=[common], help="lower and upper bounds on the directed intersection number")
    p = sub.add_parser("export-dot", parents=[common], help="DOT of the underlying graph or the condensation")
    p.add_argument("--condensation", action="store_true")
    p.add_argument("-o", "--output", metavar="PATH")
    return parser


def _use_color(stream: Any) -> bool:
    return "NO_COLOR" not in os.environ and hasattr(stream, "isatty") and stream.isatty()


def run_cli(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    writes = [getattr(args, k, None) for k in ("emit_rep", "output")]
    if len(args.files) > 1 and any(writes):
        print("dinrep: error: --emit-rep/--output need a single instance file", file=sys.stderr)
        return INPUT_ERROR
    if args.jobs > 1 and len(args.files) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            outcomes = list(pool.map(run_one, [args] * len(args.files), args.files))
    else:
        outcomes = [run_one(args, path) for path in args.files]

    color = _use_color(sys.stdout)
    code = OK
    for out in outcomes:
        code = max(code, out.code)
        if out.error:
            print(f"dinrep: error: {out.error}", file=sys.stderr)
            continue
        print(out.line)
        if args.human and out.summary:
            tag = "ok" if out.code == OK else "FAIL"
            if color:
                tag = f"\033[{32 if out.code == OK else 31}m{tag}\033[0m"
            print(f"{tag}: {out.summary}")
    return code


def main() -> None:
    sys.exit(run_cli())
