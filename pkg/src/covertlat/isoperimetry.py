"""Closed-form lower bounds on boundary sizes of finite lattice subsets.

For a finite subset S of an infinite lattice, the boundary (vertex or
edge) cannot be smaller than a lattice-dependent multiple of sqrt(|S|):

==============  ==========================  =====================
lattice         vertex boundary             edge boundary
==============  ==========================  =====================
square          2*sqrt(2|S|)                4*sqrt(|S|)
hex             sqrt(6|S|)                  sqrt(6|S|)
heavy-hex       (-9 + sqrt(81+60|S|)) / 5   via base projection
heavy-square    via base projection         via base projection
==============  ==========================  =====================

"Via base projection" means the bound is computed in two steps: a heavy
lattice is a once-subdivided base lattice, and the boundary of any heavy
set is at least the boundary of its base-vertex projection (see
:mod:`covertlat.subdivision`), which the base lattice's closed form then
bounds.  No single closed form is claimed for those cases.

:func:`check_bound` evaluates a bound against an actual boundary
enumeration.  The inequalities hold for every finite set, so a violation
is surfaced as :class:`~covertlat.errors.BoundViolationError` rather
than returned as data.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

from . import lattice
from .errors import BoundViolationError, UnsupportedKindError
from .lattice import LatticeKind, VertexSet

# Boundary sizes are exact integers; only the bound is irrational, so a
# tiny comparison slack is enough.
EPSILON = 1e-9

BOUND_CSV_HEADER = ("kind", "which", "set_size", "boundary_size", "bound", "gap", "satisfied")


def _require_nonneg(n: int) -> None:
    if n < 0:
        raise ValueError(f"set size must be nonnegative, got {n}")


def bound_square_vertex(n: int) -> float:
    _require_nonneg(n)
    return 2.0 * math.sqrt(2.0 * n)


def bound_square_edge(n: int) -> float:
    _require_nonneg(n)
    return 4.0 * math.sqrt(n)


def bound_hex_vertex(n: int) -> float:
    _require_nonneg(n)
    return math.sqrt(6.0 * n)


def bound_hex_edge(n: int) -> float:
    _require_nonneg(n)
    return math.sqrt(6.0 * n)


def bound_heavyhex_vertex(n: int) -> float:
    """Vertex-boundary bound for heavy-hex sets; 0 at n=0, increasing in n."""
    _require_nonneg(n)
    return (-9.0 + math.sqrt(81.0 + 60.0 * n)) / 5.0


@dataclass(frozen=True)
class BoundReport:
    """Outcome of checking one boundary bound on one concrete set."""

    lattice_kind: LatticeKind
    which: str  # "vertex" or "edge"
    set_size: int
    boundary_size: int
    bound_value: float

    @property
    def gap(self) -> float:
        return self.boundary_size - self.bound_value

    @property
    def satisfied(self) -> bool:
        return self.gap >= -EPSILON

    def to_json_obj(self) -> dict:
        return {
            "kind": self.lattice_kind.value,
            "which": self.which,
            "set_size": self.set_size,
            "boundary_size": self.boundary_size,
            "bound": self.bound_value,
            "gap": self.gap,
            "satisfied": self.satisfied,
        }

    def to_csv_row(self) -> tuple:
        return (
            self.lattice_kind.value,
            self.which,
            self.set_size,
            self.boundary_size,
            repr(self.bound_value),
            repr(self.gap),
            str(self.satisfied).lower(),
        )


def bound_value(kind: LatticeKind, which: str, set_size: int, base_size: int | None = None) -> float:
    """The applicable lower bound for a set of the given size(s).

    ``base_size`` is the base-projection cardinality and is required for
    the two-step heavy-lattice bounds (heavy-square both ways, heavy-hex
    edge); it is ignored otherwise.
    """
    if which not in ("vertex", "edge"):
        raise UnsupportedKindError(f"unknown boundary flavor {which!r}")
    if kind is LatticeKind.SQUARE:
        return bound_square_vertex(set_size) if which == "vertex" else bound_square_edge(set_size)
    if kind is LatticeKind.HEX:
        return bound_hex_vertex(set_size) if which == "vertex" else bound_hex_edge(set_size)
    if kind is LatticeKind.HEAVY_HEX and which == "vertex":
        return bound_heavyhex_vertex(set_size)
    if base_size is None:
        raise UnsupportedKindError(
            f"{kind.value}/{which} bound needs the base projection size"
        )
    if kind is LatticeKind.HEAVY_HEX:
        return bound_hex_edge(base_size)
    if kind is LatticeKind.HEAVY_SQUARE:
        return bound_square_vertex(base_size) if which == "vertex" else bound_square_edge(base_size)
    raise UnsupportedKindError(f"no {which} bound on {kind.value}")


def check_bound(s: VertexSet, which: str = "vertex") -> BoundReport:
    """Enumerate the boundary of ``s`` and compare it with its lower bound.

    Returns a satisfied report, or raises
    :class:`~covertlat.errors.BoundViolationError` carrying the failing
    report (which would indicate a bug, not a property of the set).
    """
    if which == "vertex":
        boundary_size = len(lattice.vertex_boundary(s))
    elif which == "edge":
        boundary_size = len(lattice.edge_boundary(s))
    else:
        raise UnsupportedKindError(f"unknown boundary flavor {which!r}")
    base_size = len(lattice.base_projection(s)) if s.kind.is_heavy else None
    report = BoundReport(
        lattice_kind=s.kind,
        which=which,
        set_size=len(s),
        boundary_size=boundary_size,
        bound_value=bound_value(s.kind, which, len(s), base_size),
    )
    if not report.satisfied:
        raise BoundViolationError(report)
    return report


def random_connected_set(kind: LatticeKind, size: int, rng: random.Random) -> VertexSet:
    """A connected set of ``size`` vertices grown by seeded random BFS.

    Starts at the lattice origin and repeatedly adjoins a uniformly
    random frontier vertex.  The frontier is kept sorted so that results
    depend only on the RNG state, not on hash ordering.
    """
    if size < 1:
        raise ValueError(f"size must be >= 1, got {size}")
    current = {lattice.origin(kind)}
    frontier = sorted(lattice.neighbors(lattice.origin(kind), kind))
    while len(current) < size:
        pick = frontier.pop(rng.randrange(len(frontier)))
        if pick in current:
            continue
        current.add(pick)
        fresh = [u for u in sorted(lattice.neighbors(pick, kind)) if u not in current]
        frontier = sorted(set(frontier) | set(fresh))
    return VertexSet(kind, frozenset(current))


def random_subset(kind: LatticeKind, size: int, rng: random.Random) -> VertexSet:
    """An arbitrary (typically disconnected) set of ``size`` vertices.

    Vertices are sampled uniformly from a coordinate window whose area is
    a few times ``size``, so both sparse and clumped configurations occur.
    """
    if size < 1:
        raise ValueError(f"size must be >= 1, got {size}")
    half = max(2, math.isqrt(4 * size))
    base_kind = kind.base

    def random_base() -> lattice.Vertex:
        i = rng.randint(-half, half)
        j = rng.randint(-half, half)
        if base_kind is LatticeKind.SQUARE:
            return (i, j)
        return (i, j, rng.randint(0, 1))

    out: set = set()
    while len(out) < size:
        v = random_base()
        if not kind.is_heavy:
            out.add(v)
        elif rng.random() < 0.5:
            out.add((lattice.BASE_TAG, v))
        else:
            nbrs = sorted(lattice._base_neighbors(v, base_kind))
            out.add(lattice.sub_vertex(v, nbrs[rng.randrange(len(nbrs))]))
    return VertexSet(kind, frozenset(out))
