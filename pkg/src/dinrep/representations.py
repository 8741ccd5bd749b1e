"""Color-set representations and one verifier per representation variant.

A verifier returns ``None`` when the representation is valid and otherwise
the first :class:`Violation` met while scanning vertex pairs in
lexicographic order (pair clauses first, then per-vertex clauses).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

from .errors import DimensionMismatchError, InputError
from .graph import Digraph, Graph, PosetGraph, check_vertex_function

MISSING = "missing-intersection"
SPURIOUS = "spurious-intersection"
SIZE_ORDER = "size-order"
DEMAND = "demand"
UNIFORMITY = "uniformity"


@dataclass(frozen=True)
class Representation:
    """Colors ``0..universe_size-1`` and a sorted color tuple per vertex."""

    universe_size: int
    assignment: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        norm = []
        for v, colors in enumerate(self.assignment):
            cs = tuple(sorted(int(c) for c in colors))
            if any(a == b for a, b in zip(cs, cs[1:])):
                raise InputError(f"vertex {v} lists a color twice")
            if cs and (cs[0] < 0 or cs[-1] >= self.universe_size):
                raise InputError(
                    f"vertex {v} uses a color outside 0..{self.universe_size - 1}"
                )
            norm.append(cs)
        object.__setattr__(self, "assignment", tuple(norm))

    @classmethod
    def from_sets(cls, universe_size: int, sets: Iterable[Iterable[int]]) -> Representation:
        return cls(universe_size, tuple(tuple(s) for s in sets))

    @property
    def n(self) -> int:
        return len(self.assignment)

    @cached_property
    def masks(self) -> tuple[int, ...]:
        out = []
        for colors in self.assignment:
            m = 0
            for c in colors:
                m |= 1 << c
            out.append(m)
        return tuple(out)

    @cached_property
    def sizes(self) -> tuple[int, ...]:
        return tuple(len(cs) for cs in self.assignment)

    def used_colors(self) -> list[int]:
        used = 0
        for m in self.masks:
            used |= m
        return [c for c in range(self.universe_size) if used >> c & 1]

    def without(self, v: int, color: int) -> Representation:
        """Copy with one occurrence of ``color`` removed from vertex ``v``."""
        sets = list(self.assignment)
        sets[v] = tuple(c for c in sets[v] if c != color)
        return Representation(self.universe_size, tuple(sets))


@dataclass(frozen=True)
class Violation:
    kind: str
    vertices: tuple[int, ...]


def _check_dims(n: int, r: Representation) -> None:
    if r.n != n:
        raise DimensionMismatchError(f"representation covers {r.n} vertices, host has {n}")


def _pair_clause(adjacent: bool, r: Representation, u: int, v: int) -> Violation | None:
    meets = bool(r.masks[u] & r.masks[v])
    if adjacent and not meets:
        return Violation(MISSING, (u, v))
    if meets and not adjacent:
        return Violation(SPURIOUS, (u, v))
    return None


def verify_in(g: Graph, r: Representation) -> Violation | None:
    """Adjacency in ``g`` iff the color sets intersect, for all distinct pairs."""
    _check_dims(g.n, r)
    for u in range(g.n):
        for v in range(u + 1, g.n):
            bad = _pair_clause(g.has_edge(u, v), r, u, v)
            if bad:
                return bad
    return None


def verify_ell_in(g: Graph, ell: Sequence[int], r: Representation) -> Violation | None:
    ell = check_vertex_function(ell, g.n, "demand")
    bad = verify_in(g, r)
    if bad:
        return bad
    for v in range(g.n):
        if r.sizes[v] < ell[v]:
            return Violation(DEMAND, (v,))
    return None


def verify_poset_in(p: PosetGraph, r: Representation) -> Violation | None:
    """Intersection representation of ``p.graph`` whose set sizes strictly grow along the order."""
    g = p.graph
    _check_dims(g.n, r)
    s = r.sizes
    for u in range(g.n):
        for v in range(u + 1, g.n):
            bad = _pair_clause(g.has_edge(u, v), r, u, v)
            if bad:
                return bad
            if p.closure[u] >> v & 1 and not s[u] < s[v]:
                return Violation(SIZE_ORDER, (u, v))
            if p.closure[v] >> u & 1 and not s[v] < s[u]:
                return Violation(SIZE_ORDER, (v, u))
    return None


def _verify_directed(d: Digraph, r: Representation, strict: bool) -> Violation | None:
    _check_dims(d.n, r)
    s = r.sizes
    for u in range(d.n):
        for v in range(d.n):
            if u == v:
                continue
            meets = bool(r.masks[u] & r.masks[v])
            ordered = s[u] < s[v] if strict else s[u] <= s[v]
            if d.has_arc(u, v):
                if not meets:
                    return Violation(MISSING, (u, v))
                if not ordered:
                    return Violation(SIZE_ORDER, (u, v))
            elif meets and ordered:
                return Violation(SPURIOUS, (u, v))
    return None


def verify_din(d: Digraph, r: Representation) -> Violation | None:
    """``(u, v)`` is an arc iff the sets meet and ``|phi(u)| < |phi(v)|``.

    Any directed cycle makes this fail, so no acyclicity check is needed.
    """
    return _verify_directed(d, r, strict=True)


def verify_wdin(d: Digraph, r: Representation) -> Violation | None:
    return _verify_directed(d, r, strict=False)


def verify_uin(g: Graph, r: Representation) -> Violation | None:
    bad = verify_in(g, r)
    if bad:
        return bad
    for v in range(1, g.n):
        if r.sizes[v] != r.sizes[0]:
            return Violation(UNIFORMITY, (0, v))
    return None


def compact(r: Representation) -> Representation:
    """Drop unused colors and renumber the rest densely, keeping their order."""
    used = r.used_colors()
    new_id = {c: i for i, c in enumerate(used)}
    return Representation(len(used), tuple(tuple(new_id[c] for c in cs) for cs in r.assignment))
