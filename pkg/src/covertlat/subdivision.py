"""Once-subdivided graphs and their boundary relations.

Subdividing every edge of a graph G' (inserting one degree-2 vertex per
edge) yields a graph G whose boundary behavior is controlled by the base
graph: for any S in G whose base-vertex part is S', both |N(S)| >=
|N(S')| and |E(S)| >= |E(S')| hold, and supersets achieving equality can
be written down explicitly.  :func:`boundary_injection` materializes the
injective map from N(S') into N(S) that proves the vertex inequality.

Vertex ids are opaque strings with lexicographic order, so both abstract
test graphs and lattice-derived graphs pass through one interface.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping

from .errors import PreconditionError


def _canonical_edge(u: str, w: str) -> tuple[str, str]:
    return (u, w) if u < w else (w, u)


@dataclass(frozen=True)
class FiniteGraph:
    """An undirected simple graph over string vertex ids."""

    vertices: frozenset
    edges: frozenset

    @staticmethod
    def build(vertices: Iterable[str], edges: Iterable[tuple[str, str]]) -> "FiniteGraph":
        vs = frozenset(vertices)
        es = set()
        for u, w in edges:
            if u == w:
                raise ValueError(f"self-loop at {u!r}")
            if u not in vs or w not in vs:
                raise ValueError(f"edge ({u!r}, {w!r}) references a missing vertex")
            es.add(_canonical_edge(u, w))
        return FiniteGraph(vs, frozenset(es))

    @cached_property
    def _adjacency(self) -> dict:
        adj: dict = {v: set() for v in self.vertices}
        for u, w in self.edges:
            adj[u].add(w)
            adj[w].add(u)
        return adj

    def neighbors(self, v: str) -> frozenset:
        return frozenset(self._adjacency[v])

    def degree(self, v: str) -> int:
        return len(self._adjacency[v])

    def vertex_boundary(self, s: Iterable[str]) -> frozenset:
        inside = set(s)
        out = set()
        for v in inside:
            out.update(u for u in self._adjacency[v] if u not in inside)
        return frozenset(out)

    def edge_boundary(self, s: Iterable[str]) -> frozenset:
        inside = set(s)
        out = set()
        for v in inside:
            for u in self._adjacency[v]:
                if u not in inside:
                    out.add(_canonical_edge(v, u))
        return frozenset(out)

    def to_json_obj(self) -> dict:
        return {
            "vertices": sorted(self.vertices),
            "edges": [list(e) for e in sorted(self.edges)],
        }

    @staticmethod
    def from_json_obj(obj: Mapping) -> "FiniteGraph":
        return FiniteGraph.build(
            (str(v) for v in obj["vertices"]),
            ((str(u), str(w)) for u, w in obj["edges"]),
        )


@dataclass(frozen=True)
class SubdividedGraph:
    """A base graph together with its once-subdivision.

    ``sub_ids`` maps each base edge (canonical order) to the id of the
    vertex inserted on it; those ids are exactly
    ``graph.vertices - base.vertices``.
    """

    base: FiniteGraph
    graph: FiniteGraph
    sub_ids: Mapping

    def sub_id(self, u: str, w: str) -> str:
        return self.sub_ids[_canonical_edge(u, w)]

    def is_sub(self, v: str) -> bool:
        return v not in self.base.vertices


def subdivide(base: FiniteGraph) -> SubdividedGraph:
    """Insert one degree-2 vertex on every edge of ``base``."""
    sub_ids = {}
    for u, w in sorted(base.edges):
        sid = f"s({u},{w})"
        if sid in base.vertices:
            raise ValueError(f"generated id {sid!r} collides with a base vertex id")
        sub_ids[(u, w)] = sid
    vertices = set(base.vertices) | set(sub_ids.values())
    edges = []
    for (u, w), sid in sub_ids.items():
        edges.append((u, sid))
        edges.append((sid, w))
    return SubdividedGraph(base, FiniteGraph.build(vertices, edges), sub_ids)


def _check_base_subset(sg: SubdividedGraph, s_base: Iterable[str]) -> frozenset:
    sb = frozenset(s_base)
    stray = sb - sg.base.vertices
    if stray:
        raise PreconditionError(f"not base vertices: {sorted(stray)}")
    return sb


def optimal_vertex_superset(sg: SubdividedGraph, s_base: Iterable[str]) -> frozenset:
    """Extend a base set with every inserted vertex touching it.

    The result S* satisfies N(S*) = N(S') as subsets of the subdivided
    graph, so its vertex boundary is exactly as small as the base set's.
    """
    sb = _check_base_subset(sg, s_base)
    extra = {
        sid for (u, w), sid in sg.sub_ids.items() if u in sb or w in sb
    }
    return frozenset(sb | extra)


def optimal_edge_superset(sg: SubdividedGraph, s_base: Iterable[str]) -> frozenset:
    """Extend a base set with the inserted vertices interior to it.

    Only edges with both endpoints inside contribute their inserted
    vertex, which makes |E(S*)| = |E(S')| in the subdivided graph.
    """
    sb = _check_base_subset(sg, s_base)
    extra = {
        sid for (u, w), sid in sg.sub_ids.items() if u in sb and w in sb
    }
    return frozenset(sb | extra)


def boundary_injection(
    sg: SubdividedGraph,
    s: Iterable[str],
    s_base: Iterable[str] | None = None,
) -> dict:
    """An injective map from N(S') in the base into N(S) in the subdivision.

    ``s`` is a vertex set of the subdivided graph; its base part must
    equal ``s_base`` when that is supplied.  For each base boundary
    vertex u, a witness neighbor w(u) inside S' is fixed (the
    lexicographically smallest, for determinism) and u maps to itself if
    the inserted vertex on {u, w(u)} lies in S, otherwise to that
    inserted vertex.
    """
    s_full = frozenset(s)
    stray = s_full - sg.graph.vertices
    if stray:
        raise PreconditionError(f"not vertices of the subdivision: {sorted(stray)}")
    induced = frozenset(v for v in s_full if v in sg.base.vertices)
    if s_base is not None:
        declared = frozenset(s_base)
        if declared != induced:
            raise PreconditionError(
                "declared base set does not equal the base part of S "
                f"(declared {sorted(declared)}, induced {sorted(induced)})"
            )
    mapping = {}
    for u in sorted(sg.base.vertex_boundary(induced)):
        witness = min(v for v in sg.base.neighbors(u) if v in induced)
        mid = sg.sub_id(u, witness)
        mapping[u] = u if mid in s_full else mid
    return mapping
