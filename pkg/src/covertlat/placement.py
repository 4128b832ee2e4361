"""Device topologies and buffered circuit placement.

A placement splits a device's working qubits into four classes:

* ``computational`` -- the n qubits that will run the circuit,
* ``interior_idle`` -- unused cells inside the placed region,
* ``buffer``        -- the idle ring at the region's lattice boundary,
* ``willie``        -- everything else (the co-tenant's share).

Because couplers are a subset of lattice adjacency, no coupler can reach
from the region to a ``willie`` qubit without passing through the
buffer, which is the separation property the planner guarantees.  The
region is chosen so that ``interior_idle + buffer`` stays O(sqrt(n)):
near-square blocks on the square lattice, hexagon disks (with a compact
grown region for sizes below one disk) on the hex and heavy-hex
lattices.

A placement is only considered feasible when the region *and its entire
lattice boundary ring* land on present, non-excluded qubits; holes make
an anchor infeasible rather than triggering any reshaping.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path
from typing import Iterable, Mapping

from . import lattice
from .errors import (
    DeviceFormatError,
    InfeasiblePlacementError,
    UnsupportedKindError,
)
from .lattice import LatticeKind, Vertex, VertexSet


@dataclass(frozen=True)
class DeviceTopology:
    """A finite named qubit graph with lattice coordinates."""

    name: str
    kind: LatticeKind
    qubits: tuple  # ((id, vertex), ...) sorted by id
    couplers: frozenset  # frozenset of (id, id) with id1 < id2
    excluded: frozenset

    @cached_property
    def id_to_vertex(self) -> dict:
        return dict(self.qubits)

    @cached_property
    def vertex_to_id(self) -> dict:
        return {v: q for q, v in self.qubits}

    @cached_property
    def coupler_adjacency(self) -> dict:
        adj: dict = {q: set() for q, _ in self.qubits}
        for a, b in self.couplers:
            adj[a].add(b)
            adj[b].add(a)
        return adj

    @cached_property
    def working_positions(self) -> dict:
        """vertex -> id for every present, non-excluded qubit."""
        return {v: q for q, v in self.qubits if q not in self.excluded}

    @property
    def n_qubits(self) -> int:
        return len(self.qubits)

    def working_ids(self) -> frozenset:
        return frozenset(q for q, _ in self.qubits if q not in self.excluded)

    def to_json_obj(self) -> dict:
        return {
            "name": self.name,
            "kind": self.kind.value,
            "qubits": [
                {"id": q, "vertex": lattice.vertex_to_jsonable(v, self.kind)}
                for q, v in self.qubits
            ],
            "couplers": [list(c) for c in sorted(self.couplers)],
            "excluded": sorted(self.excluded),
        }


def build_device(
    name: str,
    kind: LatticeKind,
    qubits: Mapping,
    couplers: Iterable,
    excluded: Iterable = (),
) -> DeviceTopology:
    """Validate and assemble a topology; raises DeviceFormatError on problems."""
    items = sorted(qubits.items())
    ids = [q for q, _ in items]
    if len(set(ids)) != len(ids):
        raise DeviceFormatError("duplicate qubit ids")
    seen_vertices = set()
    for q, v in items:
        if not isinstance(q, int) or q < 0:
            raise DeviceFormatError(f"qubit id must be a nonnegative integer, got {q!r}")
        try:
            lattice.validate_vertex(v, kind)
        except Exception as exc:
            raise DeviceFormatError(f"qubit {q}: {exc}") from exc
        if v in seen_vertices:
            raise DeviceFormatError(f"two qubits mapped to vertex {v!r}")
        seen_vertices.add(v)
    id_set = set(ids)
    vmap = dict(items)
    canon = set()
    for pair in couplers:
        a, b = pair
        if a == b:
            raise DeviceFormatError(f"coupler connects qubit {a} to itself")
        if a not in id_set or b not in id_set:
            raise DeviceFormatError(f"coupler ({a}, {b}) references a missing qubit")
        if not lattice.is_adjacent(vmap[a], vmap[b], kind):
            raise DeviceFormatError(
                f"coupler ({a}, {b}) joins non-adjacent lattice vertices "
                f"{vmap[a]!r} and {vmap[b]!r}"
            )
        canon.add((a, b) if a < b else (b, a))
    excl = frozenset(excluded)
    stray = excl - id_set
    if stray:
        raise DeviceFormatError(f"excluded ids not on device: {sorted(stray)}")
    return DeviceTopology(
        name=str(name),
        kind=kind,
        qubits=tuple(items),
        couplers=frozenset(canon),
        excluded=excl,
    )


def load_device(source) -> DeviceTopology:
    """Load a device from a JSON document, path, or already-parsed dict."""
    if isinstance(source, (str, Path)):
        with open(source, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    else:
        doc = source
    try:
        kind = LatticeKind(doc["kind"])
    except (KeyError, ValueError) as exc:
        raise DeviceFormatError(f"bad or missing lattice kind: {exc}") from exc
    try:
        qubits = {
            int(entry["id"]): lattice.vertex_from_jsonable(entry["vertex"], kind)
            for entry in doc["qubits"]
        }
        couplers = [(int(a), int(b)) for a, b in doc.get("couplers", [])]
        excluded = [int(q) for q in doc.get("excluded", [])]
        name = doc.get("name", "unnamed")
    except (KeyError, TypeError, ValueError) as exc:
        raise DeviceFormatError(f"malformed device document: {exc}") from exc
    except Exception as exc:  # vertex validation errors
        raise DeviceFormatError(str(exc)) from exc
    return build_device(name, kind, qubits, couplers, excluded)


def bundled_device_path(name: str) -> Path:
    """Path of a device file shipped with the package (e.g. ``emerald``)."""
    return Path(__file__).parent / "devices" / f"{name}.json"


# ---------------------------------------------------------------------------
# synthetic device builders (used by tests and experiment scripts)
# ---------------------------------------------------------------------------


def synthetic_square_device(rows: int, cols: int, name: str = "synthetic-square") -> DeviceTopology:
    """A fully-coupled rows x cols patch of the square lattice."""
    qubits = {}
    qid = 0
    for i in range(rows):
        for j in range(cols):
            qubits[qid] = (i, j)
            qid += 1
    couplers = []
    vertex_to_id = {v: q for q, v in qubits.items()}
    for v, q in vertex_to_id.items():
        for w in lattice.neighbors(v, LatticeKind.SQUARE):
            if w in vertex_to_id and q < vertex_to_id[w]:
                couplers.append((q, vertex_to_id[w]))
    return build_device(name, LatticeKind.SQUARE, qubits, couplers)


def _synthetic_from_vertex_set(name: str, s: VertexSet) -> DeviceTopology:
    ordered = sorted(s.vertices)
    vertex_to_id = {v: i for i, v in enumerate(ordered)}
    couplers = []
    for v, q in vertex_to_id.items():
        for w in lattice.neighbors(v, s.kind):
            if w in vertex_to_id and q < vertex_to_id[w]:
                couplers.append((q, vertex_to_id[w]))
    return build_device(name, s.kind, dict(enumerate(ordered)), couplers)


def synthetic_hex_device(face_radius: int, name: str = "synthetic-hex") -> DeviceTopology:
    """All hexagonal-lattice vertices of the radius-``face_radius`` disk."""
    return _synthetic_from_vertex_set(name, lattice.hex_disk(face_radius, LatticeKind.HEX))


def synthetic_heavyhex_device(face_radius: int, name: str = "synthetic-heavy-hex") -> DeviceTopology:
    """A heavy-hex patch covering the radius-``face_radius`` disk plus its ring."""
    return _synthetic_from_vertex_set(
        name,
        lattice.hex_disk(face_radius, LatticeKind.HEAVY_HEX, include_outgoing=True),
    )


# ---------------------------------------------------------------------------
# placement planning
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Placement:
    device_name: str
    kind: LatticeKind
    n: int
    shape: str
    anchor: tuple
    computational: frozenset
    interior_idle: frozenset
    buffer: frozenset
    willie: frozenset

    @property
    def overhead(self) -> int:
        return len(self.interior_idle) + len(self.buffer)

    def to_json_obj(self) -> dict:
        return {
            "device": self.device_name,
            "kind": self.kind.value,
            "n": self.n,
            "shape": self.shape,
            "anchor": list(self.anchor),
            "computational": sorted(self.computational),
            "interior_idle": sorted(self.interior_idle),
            "buffer": sorted(self.buffer),
            "willie": sorted(self.willie),
            "overhead": self.overhead,
            "sqrt_law_bound": sqrt_law_bound(self.n),
        }


def sqrt_law_bound(n: int) -> float:
    """The square-grid overhead budget ``2*sqrt(n) + 4*ceil(sqrt(n))``."""
    return 2.0 * math.sqrt(n) + 4.0 * math.ceil(math.sqrt(n))


def _region_ring(region: Iterable[Vertex], kind: LatticeKind) -> frozenset:
    return lattice.vertex_boundary(VertexSet(kind, frozenset(region))).vertices


def _make_placement(
    device: DeviceTopology,
    n: int,
    region: Iterable[Vertex],
    shape: str,
    anchor: tuple,
) -> Placement:
    region = sorted(region)
    positions = device.working_positions
    comp_vertices = region[:n]
    idle_vertices = region[n:]
    ring = _region_ring(region, device.kind)
    comp = frozenset(positions[v] for v in comp_vertices)
    idle = frozenset(positions[v] for v in idle_vertices)
    buffer = frozenset(positions[v] for v in sorted(ring))
    willie = device.working_ids() - comp - idle - buffer
    placement = Placement(
        device_name=device.name,
        kind=device.kind,
        n=n,
        shape=shape,
        anchor=anchor,
        computational=comp,
        interior_idle=idle,
        buffer=buffer,
        willie=willie,
    )
    _assert_separated(device, placement)
    return placement


def _assert_separated(device: DeviceTopology, placement: Placement) -> None:
    inner = placement.computational | placement.interior_idle
    for a, b in device.couplers:
        if (a in inner and b in placement.willie) or (b in inner and a in placement.willie):
            raise AssertionError(
                f"separation violated by coupler ({a}, {b}); this is a planner bug"
            )


def _rect_cells(i0: int, j0: int, rows: int, cols: int) -> list:
    return [(i0 + di, j0 + dj) for di in range(rows) for dj in range(cols)]


def _plan_square(device: DeviceTopology, n: int, anchor) -> Placement:
    positions = device.working_positions
    if not positions:
        raise InfeasiblePlacementError(n, 0)
    imin = min(v[0] for v in positions)
    imax = max(v[0] for v in positions)
    jmin = min(v[1] for v in positions)
    jmax = max(v[1] for v in positions)
    extent_rows = imax - imin + 1
    extent_cols = jmax - jmin + 1

    shapes = sorted(
        {
            (a, math.ceil(n / a))
            for a in range(1, min(n, extent_rows) + 1)
            if math.ceil(n / a) <= extent_cols
        },
        key=lambda s: (s[0] * s[1] - n + 2 * (s[0] + s[1]), s[0], s[1]),
    )
    for rows, cols in shapes:
        if anchor is not None:
            anchors = [tuple(anchor)]
        else:
            anchors = [
                (i0, j0)
                for i0 in range(imin, imax - rows + 2)
                for j0 in range(jmin, jmax - cols + 2)
            ]
        for i0, j0 in anchors:
            cells = _rect_cells(i0, j0, rows, cols)
            ring = _region_ring(cells, LatticeKind.SQUARE)
            if all(c in positions for c in cells) and all(c in positions for c in ring):
                return _make_placement(
                    device, n, cells, f"block {rows}x{cols}", (i0, j0)
                )
    raise InfeasiblePlacementError(n, _largest_feasible_square(device))


def _largest_feasible_square(device: DeviceTopology) -> int:
    positions = device.working_positions
    if not positions:
        return 0
    imin = min(v[0] for v in positions)
    imax = max(v[0] for v in positions)
    jmin = min(v[1] for v in positions)
    jmax = max(v[1] for v in positions)
    best = 0
    for rows in range(imax - imin + 1, 0, -1):
        for cols in range(jmax - jmin + 1, 0, -1):
            if rows * cols <= best:
                break
            found = False
            for i0 in range(imin, imax - rows + 2):
                for j0 in range(jmin, jmax - cols + 2):
                    cells = _rect_cells(i0, j0, rows, cols)
                    if not all(c in positions for c in cells):
                        continue
                    ring = _region_ring(cells, LatticeKind.SQUARE)
                    if all(c in positions for c in ring):
                        found = True
                        break
                if found:
                    break
            if found:
                best = max(best, rows * cols)
    return best


def hex_disk_size(kind: LatticeKind, r: int) -> int:
    if kind is LatticeKind.HEX:
        return 6 * (r + 1) ** 2
    if kind is LatticeKind.HEAVY_HEX:
        return 15 * (r + 1) ** 2 - 3 * (r + 1)
    raise UnsupportedKindError(f"no disk construction on {kind.value}")


def _translate(v: Vertex, kind: LatticeKind, da: int, db: int) -> Vertex:
    if kind is LatticeKind.HEX:
        return (v[0] + da, v[1] + db, v[2])
    if v[0] == lattice.BASE_TAG:
        return (lattice.BASE_TAG, _translate(v[1], LatticeKind.HEX, da, db))
    return lattice.sub_vertex(
        _translate(v[1], LatticeKind.HEX, da, db),
        _translate(v[2], LatticeKind.HEX, da, db),
    )


def _hex_coord_range(positions, kind: LatticeKind):
    def base_coords(v):
        if kind is LatticeKind.HEX:
            yield v
        elif v[0] == lattice.BASE_TAG:
            yield v[1]
        else:
            yield v[1]
            yield v[2]

    a_vals = []
    b_vals = []
    for v in positions:
        for c in base_coords(v):
            a_vals.append(c[0])
            b_vals.append(c[1])
    return min(a_vals), max(a_vals), min(b_vals), max(b_vals)


def _plan_hex_disk(device: DeviceTopology, n: int, r: int, anchor):
    """Best disk translation, or None when no translation fits."""
    positions = device.working_positions
    disk = sorted(lattice.hex_disk(r, device.kind).vertices)
    ring = sorted(_region_ring(disk, device.kind))
    amin, amax, bmin, bmax = _hex_coord_range(positions, device.kind)
    span = r + 2
    if anchor is not None:
        offsets = [tuple(anchor)]
    else:
        offsets = [
            (da, db)
            for da in range(amin - span, amax + span + 1)
            for db in range(bmin - span, bmax + span + 1)
        ]
    for da, db in offsets:
        if not all(_translate(v, device.kind, da, db) in positions for v in disk):
            continue
        if not all(_translate(v, device.kind, da, db) in positions for v in ring):
            continue
        cells = [_translate(v, device.kind, da, db) for v in disk]
        return _make_placement(device, n, cells, f"disk r={r}", (da, db))
    return None


def _grow_compact_region(device: DeviceTopology, start: Vertex, n: int):
    """Greedily grow an n-vertex region from ``start``, keeping the ring small.

    Growth only passes through working positions; each step adjoins the
    frontier vertex minimizing the resulting lattice-boundary size (ties
    broken lexicographically).  Returns None when the component is too
    small.
    """
    positions = device.working_positions
    kind = device.kind
    region = {start}
    boundary = set(lattice.neighbors(start, kind))
    while len(region) < n:
        frontier = sorted(v for v in boundary if v in positions)
        if not frontier:
            return None
        best = None
        for v in frontier:
            gained = sum(
                1
                for u in lattice.neighbors(v, kind)
                if u not in region and u not in boundary
            )
            score = len(boundary) - 1 + gained
            if best is None or (score, v) < best:
                best = (score, v)
        pick = best[1]
        region.add(pick)
        boundary.discard(pick)
        boundary.update(
            u for u in lattice.neighbors(pick, kind) if u not in region
        )
    return region, boundary


def _plan_hex(device: DeviceTopology, n: int, anchor) -> Placement:
    positions = device.working_positions
    kind = device.kind
    disk0 = hex_disk_size(kind, 0)
    r = 0
    while hex_disk_size(kind, r) < n:
        r += 1

    disk_anchor = anchor if (anchor is not None and n >= disk0) else None
    disk_placement = _plan_hex_disk(device, n, r, disk_anchor) if anchor is None or n >= disk0 else None

    grown_placement = None
    if n < disk0:
        starts = [tuple(anchor)] if anchor is not None else sorted(positions)
        best = None
        for start in starts:
            grown = _grow_compact_region(device, start, n)
            if grown is None:
                continue
            region, boundary = grown
            if not all(v in positions for v in boundary):
                continue
            key = (len(boundary), start)
            if best is None or key < best[0]:
                best = (key, region)
        if best is not None:
            region = best[1]
            grown_placement = _make_placement(
                device, n, region, f"grown {n}", tuple(best[0][1])
            )

    candidates = [p for p in (disk_placement, grown_placement) if p is not None]
    if not candidates:
        raise InfeasiblePlacementError(n, _largest_feasible_hex(device))
    # Disks are the reference construction; a grown region must strictly
    # improve the overhead to displace one.
    best = candidates[0]
    for p in candidates[1:]:
        if p.overhead < best.overhead:
            best = p
    return best


def _largest_feasible_hex(device: DeviceTopology) -> int:
    positions = device.working_positions
    if not positions:
        return 0
    amin, amax, bmin, bmax = _hex_coord_range(positions, device.kind)
    r_cap = max(amax - amin, bmax - bmin) + 1
    for r in range(r_cap, -1, -1):
        if _plan_hex_disk(device, hex_disk_size(device.kind, r), r, None) is not None:
            return hex_disk_size(device.kind, r)
    for n in range(min(hex_disk_size(device.kind, 0) - 1, len(positions)), 0, -1):
        try:
            _plan_hex(device, n, None)
            return n
        except InfeasiblePlacementError:
            continue
    return 0


def plan(device: DeviceTopology, n: int, anchor=None) -> Placement:
    """Place an ``n``-qubit computation with an idle separating buffer.

    Scans all feasible anchors (or only ``anchor`` when given) and
    returns the placement minimizing ``interior_idle + buffer``, with
    ties broken by the lexicographically smallest anchor.  Raises
    :class:`InfeasiblePlacementError` carrying the largest workable size
    when ``n`` does not fit.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if device.kind is LatticeKind.SQUARE:
        return _plan_square(device, n, anchor)
    if device.kind in (LatticeKind.HEX, LatticeKind.HEAVY_HEX):
        return _plan_hex(device, n, anchor)
    raise UnsupportedKindError(f"planning is not supported on {device.kind.value}")


def largest_feasible_n(device: DeviceTopology) -> int:
    if device.kind is LatticeKind.SQUARE:
        return _largest_feasible_square(device)
    if device.kind in (LatticeKind.HEX, LatticeKind.HEAVY_HEX):
        return _largest_feasible_hex(device)
    raise UnsupportedKindError(f"planning is not supported on {device.kind.value}")


# ---------------------------------------------------------------------------
# edge-set scheduling and spectator classification
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class EdgeSchedule:
    """Disjoint matchings covering the computational region's couplers."""

    edge_sets: tuple  # tuple of tuples of (id, id)

    def __len__(self) -> int:
        return len(self.edge_sets)

    def to_json_obj(self) -> dict:
        return {"edge_sets": [[list(e) for e in s] for s in self.edge_sets]}


def schedule_edges(device: DeviceTopology, placement: Placement) -> EdgeSchedule:
    """Greedy proper edge coloring of the induced computational subgraph.

    Edges are visited in sorted order and assigned the lowest-index set
    in which neither endpoint is already busy, so every set is a
    matching and the sets partition the induced edge list.
    """
    comp = placement.computational
    edges = sorted(
        (a, b) for a, b in device.couplers if a in comp and b in comp
    )
    sets: list[list] = []
    busy: list[set] = []
    for a, b in edges:
        for idx, used in enumerate(busy):
            if a not in used and b not in used:
                sets[idx].append((a, b))
                used.update((a, b))
                break
        else:
            sets.append([(a, b)])
            busy.append({a, b})
    return EdgeSchedule(tuple(tuple(s) for s in sets))


def classify_spectators(
    device: DeviceTopology,
    placement: Placement,
    schedule: EdgeSchedule,
    edge_set_index: int,
) -> dict:
    """Label each spectator ``"nn"`` or ``"non_nn"`` for one edge set.

    A spectator (buffer or willie qubit) is a nearest neighbor exactly
    when a coupler links it to an endpoint of an active edge in the
    chosen set; the classification is per edge set, so one qubit may flip
    between labels across sets.
    """
    if not 0 <= edge_set_index < len(schedule.edge_sets):
        raise IndexError(
            f"edge set index {edge_set_index} out of range "
            f"(have {len(schedule.edge_sets)} sets)"
        )
    active = set()
    for a, b in schedule.edge_sets[edge_set_index]:
        active.update(device.coupler_adjacency[a])
        active.update(device.coupler_adjacency[b])
    spectators = placement.buffer | placement.willie
    return {
        q: ("nn" if q in active else "non_nn") for q in sorted(spectators)
    }


def hop_distances(device: DeviceTopology, sources: Iterable) -> dict:
    """BFS hop distance from a set of qubits over the coupler graph."""
    dist = {}
    frontier = sorted(set(sources))
    for q in frontier:
        dist[q] = 0
    depth = 0
    while frontier:
        depth += 1
        nxt = []
        for q in frontier:
            for u in sorted(device.coupler_adjacency[q]):
                if u not in dist:
                    dist[u] = depth
                    nxt.append(u)
        frontier = nxt
    return dist


# ---------------------------------------------------------------------------
# ASCII rendering
# ---------------------------------------------------------------------------

_GRID_STEP = {
    LatticeKind.SQUARE: (1.0, 1.0),
    LatticeKind.HEAVY_SQUARE: (0.5, 0.5),
    LatticeKind.HEX: (math.sqrt(3.0) / 2.0, 0.5),
    LatticeKind.HEAVY_HEX: (math.sqrt(3.0) / 4.0, 0.25),
}


def ascii_map(device: DeviceTopology, placement: Placement | None = None) -> str:
    """A character map of the device, one cell per qubit.

    ``C`` computational, ``o`` interior idle, ``B`` buffer, ``.`` other
    working qubits, ``x`` excluded.
    """
    dx, dy = _GRID_STEP[device.kind]
    coords = {q: lattice.to_xy(v, device.kind) for q, v in device.qubits}
    xmin = min(x for x, _ in coords.values())
    ymax = max(y for _, y in coords.values())
    cells = {}
    for q, (x, y) in coords.items():
        col = round((x - xmin) / dx)
        row = round((ymax - y) / dy)
        if (row, col) in cells:
            raise AssertionError("two qubits rendered to one cell; grid step too coarse")
        cells[(row, col)] = q

    def glyph(q: int) -> str:
        if q in device.excluded:
            return "x"
        if placement is None:
            return "."
        if q in placement.computational:
            return "C"
        if q in placement.interior_idle:
            return "o"
        if q in placement.buffer:
            return "B"
        return "."

    n_rows = max(r for r, _ in cells) + 1
    n_cols = max(c for _, c in cells) + 1
    grid = [[" "] * n_cols for _ in range(n_rows)]
    for (row, col), q in cells.items():
        grid[row][col] = glyph(q)
    lines = ["".join(r).rstrip() for r in grid]
    legend = "C computational  o interior idle  B buffer  . willie  x excluded"
    return "\n".join(lines + [legend])
