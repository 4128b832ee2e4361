"""Exact integer representations of the four infinite qubit lattices.

Four lattices are supported: the square grid, the hexagonal (honeycomb)
grid, and their "heavy" variants obtained by inserting one degree-2
vertex on every edge.  All coordinates are integers, so adjacency is
exact and no floating-point geometry is involved.

Coordinate conventions
----------------------
square      ``(i, j)``          4 neighbors ``(i±1, j), (i, j±1)``.
hex         ``(i, j, s)``       two-site cell basis, ``s ∈ {0, 1}``.
                                ``(i, j, 0)`` is adjacent to ``(i, j, 1)``,
                                ``(i-1, j, 1)`` and ``(i, j-1, 1)``; the
                                rule for ``s = 1`` is the mirror image.
heavy-*     ``("b", v)``        a vertex ``v`` of the base lattice, or
            ``("s", u, w)``     the inserted vertex on base edge ``{u, w}``
                                with ``u < w`` lexicographically.

Planar drawing positions (only used for maps/plots) are derived from the
integer coordinates by a fixed affine map per kind; see :func:`to_xy`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Iterator

from .errors import InvalidVertexError, KindMismatchError, UnsupportedKindError

Vertex = tuple


class LatticeKind(str, Enum):
    SQUARE = "square"
    HEX = "hex"
    HEAVY_HEX = "heavy-hex"
    HEAVY_SQUARE = "heavy-square"

    @property
    def is_heavy(self) -> bool:
        return self in (LatticeKind.HEAVY_HEX, LatticeKind.HEAVY_SQUARE)

    @property
    def base(self) -> "LatticeKind":
        """The lattice whose once-subdivision this kind is (itself if not heavy)."""
        if self is LatticeKind.HEAVY_HEX:
            return LatticeKind.HEX
        if self is LatticeKind.HEAVY_SQUARE:
            return LatticeKind.SQUARE
        return self


BASE_TAG = "b"
SUB_TAG = "s"


def _is_int(x) -> bool:
    return isinstance(x, int) and not isinstance(x, bool)


def _base_neighbors(v: Vertex, base: LatticeKind) -> list[Vertex]:
    if base is LatticeKind.SQUARE:
        i, j = v
        return [(i + 1, j), (i - 1, j), (i, j + 1), (i, j - 1)]
    i, j, s = v
    if s == 0:
        return [(i, j, 1), (i - 1, j, 1), (i, j - 1, 1)]
    return [(i, j, 0), (i + 1, j, 0), (i, j + 1, 0)]


def _validate_base(v: Vertex, base: LatticeKind) -> None:
    if base is LatticeKind.SQUARE:
        if not (isinstance(v, tuple) and len(v) == 2 and all(_is_int(c) for c in v)):
            raise InvalidVertexError(f"not a square-lattice vertex: {v!r}")
        return
    if not (
        isinstance(v, tuple)
        and len(v) == 3
        and _is_int(v[0])
        and _is_int(v[1])
        and v[2] in (0, 1)
    ):
        raise InvalidVertexError(f"not a hex-lattice vertex: {v!r}")


def validate_vertex(v: Vertex, kind: LatticeKind) -> None:
    """Raise :class:`InvalidVertexError` unless ``v`` is a vertex of ``kind``."""
    if not kind.is_heavy:
        _validate_base(v, kind)
        return
    base = kind.base
    if not isinstance(v, tuple) or len(v) < 2:
        raise InvalidVertexError(f"not a {kind.value} vertex: {v!r}")
    if v[0] == BASE_TAG:
        if len(v) != 2:
            raise InvalidVertexError(f"malformed base vertex: {v!r}")
        _validate_base(v[1], base)
    elif v[0] == SUB_TAG:
        if len(v) != 3:
            raise InvalidVertexError(f"malformed subdivision vertex: {v!r}")
        u, w = v[1], v[2]
        _validate_base(u, base)
        _validate_base(w, base)
        if u >= w:
            raise InvalidVertexError(
                f"subdivision endpoints must be ordered u < w, got {v!r}"
            )
        if w not in _base_neighbors(u, base):
            raise InvalidVertexError(
                f"subdivision endpoints are not adjacent in the base lattice: {v!r}"
            )
    else:
        raise InvalidVertexError(f"unknown vertex tag in {v!r}")


def sub_vertex(u: Vertex, w: Vertex) -> Vertex:
    """The inserted vertex for base edge ``{u, w}`` (order-independent)."""
    return (SUB_TAG, u, w) if u < w else (SUB_TAG, w, u)


def base_vertex(v: Vertex) -> Vertex:
    return (BASE_TAG, v)


def neighbors(v: Vertex, kind: LatticeKind) -> frozenset:
    """All lattice neighbors of ``v``; size equals the vertex degree."""
    validate_vertex(v, kind)
    if not kind.is_heavy:
        return frozenset(_base_neighbors(v, kind))
    if v[0] == BASE_TAG:
        return frozenset(sub_vertex(v[1], w) for w in _base_neighbors(v[1], kind.base))
    return frozenset(((BASE_TAG, v[1]), (BASE_TAG, v[2])))


def is_adjacent(u: Vertex, v: Vertex, kind: LatticeKind) -> bool:
    return v in neighbors(u, kind)


def origin(kind: LatticeKind) -> Vertex:
    if kind is LatticeKind.SQUARE:
        return (0, 0)
    if kind is LatticeKind.HEX:
        return (0, 0, 0)
    return (BASE_TAG, origin(kind.base))


@dataclass(frozen=True)
class VertexSet:
    """A finite set of vertices, all living on one lattice kind."""

    kind: LatticeKind
    vertices: frozenset

    @staticmethod
    def of(kind: LatticeKind, vertices: Iterable[Vertex]) -> "VertexSet":
        vs = frozenset(vertices)
        for v in vs:
            validate_vertex(v, kind)
        return VertexSet(kind, vs)

    def __len__(self) -> int:
        return len(self.vertices)

    def __iter__(self) -> Iterator[Vertex]:
        # Deterministic iteration regardless of hash randomization.
        return iter(sorted(self.vertices))

    def __contains__(self, v) -> bool:
        return v in self.vertices

    def union(self, other: "VertexSet") -> "VertexSet":
        if other.kind is not self.kind:
            raise KindMismatchError(
                f"cannot combine {self.kind.value} with {other.kind.value}"
            )
        return VertexSet(self.kind, self.vertices | other.vertices)

    def to_jsonable(self) -> list:
        return [vertex_to_jsonable(v, self.kind) for v in sorted(self.vertices)]

    @staticmethod
    def from_jsonable(kind: LatticeKind, items: Iterable) -> "VertexSet":
        return VertexSet.of(kind, (vertex_from_jsonable(o, kind) for o in items))


def vertex_to_jsonable(v: Vertex, kind: LatticeKind):
    if not kind.is_heavy:
        return list(v)
    if v[0] == BASE_TAG:
        return ["base", list(v[1])]
    return ["sub", list(v[1]), list(v[2])]


def vertex_from_jsonable(obj, kind: LatticeKind) -> Vertex:
    try:
        if not kind.is_heavy:
            v: Vertex = tuple(int(c) for c in obj)
        elif obj[0] == "base":
            v = (BASE_TAG, tuple(int(c) for c in obj[1]))
        elif obj[0] == "sub":
            v = (SUB_TAG, tuple(int(c) for c in obj[1]), tuple(int(c) for c in obj[2]))
        else:
            raise InvalidVertexError(f"unknown vertex document {obj!r}")
    except (TypeError, ValueError, IndexError) as exc:
        raise InvalidVertexError(f"unreadable vertex document {obj!r}") from exc
    validate_vertex(v, kind)
    return v


def vertex_boundary(s: VertexSet) -> VertexSet:
    """Vertices outside ``s`` with at least one neighbor inside it."""
    out = set()
    for v in s.vertices:
        for u in neighbors(v, s.kind):
            if u not in s.vertices:
                out.add(u)
    return VertexSet(s.kind, frozenset(out))


def edge_boundary(s: VertexSet) -> frozenset:
    """Lattice edges with exactly one endpoint in ``s``, as ordered pairs."""
    out = set()
    for v in s.vertices:
        for u in neighbors(v, s.kind):
            if u not in s.vertices:
                out.add((v, u) if v < u else (u, v))
    return frozenset(out)


def diamond(r: int) -> VertexSet:
    """The square-lattice graph ball ``{(i, j) : |i| + |j| <= r}``.

    Contains ``2r^2 + 2r + 1`` vertices and is the extremal shape for the
    square-grid vertex-boundary inequality.
    """
    if r < 0:
        raise ValueError(f"radius must be nonnegative, got {r}")
    cells = [
        (i, j)
        for i in range(-r, r + 1)
        for j in range(-(r - abs(i)), r - abs(i) + 1)
    ]
    return VertexSet(LatticeKind.SQUARE, frozenset(cells))


def hex_face_vertices(a: int, b: int) -> tuple[Vertex, ...]:
    """The six honeycomb vertices around face ``(a, b)``, in cycle order."""
    return (
        (a, b, 0),
        (a, b, 1),
        (a + 1, b, 0),
        (a + 1, b - 1, 1),
        (a + 1, b - 1, 0),
        (a, b - 1, 1),
    )


def _hex_disk_faces(r: int) -> list[tuple[int, int]]:
    # Faces of the honeycomb form a triangular lattice; the disk of radius
    # r is the set of faces within axial distance r of face (0, 0).
    return [
        (a, b)
        for a in range(-r, r + 1)
        for b in range(-r, r + 1)
        if (abs(a) + abs(b) + abs(a + b)) // 2 <= r
    ]


def hex_disk(
    r: int,
    kind: LatticeKind = LatticeKind.HEX,
    include_outgoing: bool = False,
) -> VertexSet:
    """Concentric-hexagon disk of radius ``r`` (``r = 0`` is one hexagon).

    On the hex lattice this is the union of the vertices of all faces
    within face-distance ``r`` of a center face, ``6(r+1)^2`` vertices in
    total.  On the heavy-hex lattice the disk consists of those base
    vertices plus every inserted vertex whose base edge lies inside the
    disk; with ``include_outgoing=True`` the inserted vertices sitting on
    the disk's outgoing edges are pulled in as well.
    """
    if r < 0:
        raise ValueError(f"radius must be nonnegative, got {r}")
    if kind not in (LatticeKind.HEX, LatticeKind.HEAVY_HEX):
        raise UnsupportedKindError(f"hex_disk is not defined on {kind.value}")
    base = set()
    for a, b in _hex_disk_faces(r):
        base.update(hex_face_vertices(a, b))
    if kind is LatticeKind.HEX:
        return VertexSet(kind, frozenset(base))
    heavy = {(BASE_TAG, v) for v in base}
    for v in base:
        for w in _base_neighbors(v, LatticeKind.HEX):
            if w in base or include_outgoing:
                heavy.add(sub_vertex(v, w))
    return VertexSet(kind, frozenset(heavy))


def base_projection(s: VertexSet) -> VertexSet:
    """The base-lattice vertices contained in a heavy-lattice set."""
    if not s.kind.is_heavy:
        raise UnsupportedKindError(f"{s.kind.value} has no base projection")
    return VertexSet(
        s.kind.base,
        frozenset(v[1] for v in s.vertices if v[0] == BASE_TAG),
    )


# Drawing basis for the honeycomb: cell (i, j) sits at i*a1 + j*a2 with
# a1 = (sqrt3, 0), a2 = (sqrt3/2, 3/2); the s = 1 site is offset by
# (sqrt3/2, 1/2) so all bonds have unit length.
_SQ3 = math.sqrt(3.0)


def to_xy(v: Vertex, kind: LatticeKind) -> tuple[float, float]:
    """Planar drawing position of a vertex (fixed affine map per kind)."""
    validate_vertex(v, kind)
    if kind is LatticeKind.SQUARE:
        i, j = v
        return (float(j), float(i))
    if kind is LatticeKind.HEX:
        i, j, s = v
        return (_SQ3 * i + 0.5 * _SQ3 * j + 0.5 * _SQ3 * s, 1.5 * j + 0.5 * s)
    if v[0] == BASE_TAG:
        return to_xy(v[1], kind.base)
    x1, y1 = to_xy(v[1], kind.base)
    x2, y2 = to_xy(v[2], kind.base)
    return (0.5 * (x1 + x2), 0.5 * (y1 + y2))
