import math
import random

import pytest

from covertlat import isoperimetry as iso
from covertlat import lattice
from covertlat.errors import BoundViolationError, UnsupportedKindError
from covertlat.lattice import LatticeKind, VertexSet

ALL_KINDS = list(LatticeKind)


# --- closed forms ----------------------------------------------------------


def test_bounds_at_zero():
    assert iso.bound_square_vertex(0) == 0
    assert iso.bound_square_edge(0) == 0
    assert iso.bound_hex_vertex(0) == 0
    assert iso.bound_hex_edge(0) == 0
    assert iso.bound_heavyhex_vertex(0) == 0


def test_bounds_reject_negative():
    for fn in (
        iso.bound_square_vertex,
        iso.bound_square_edge,
        iso.bound_hex_vertex,
        iso.bound_heavyhex_vertex,
    ):
        with pytest.raises(ValueError):
            fn(-1)


def test_square_vertex_bound_values():
    assert iso.bound_square_vertex(5) == pytest.approx(2 * math.sqrt(10))
    assert iso.bound_square_vertex(13) == pytest.approx(2 * math.sqrt(26))
    # the 5- and 13-cell diamonds beat their bounds with an integer boundary
    assert len(lattice.vertex_boundary(lattice.diamond(1))) == 8 >= 2 * math.sqrt(10)
    assert len(lattice.vertex_boundary(lattice.diamond(2))) == 12 >= 2 * math.sqrt(26)


def test_square_edge_bound_equalities():
    assert iso.bound_square_edge(1) == 4.0
    single = VertexSet.of(LatticeKind.SQUARE, [(0, 0)])
    assert len(lattice.edge_boundary(single)) == 4

    # independent count for the 2x2 block: each cell has two edges leaving
    # the block, 8 in total, all distinct
    block = VertexSet.of(LatticeKind.SQUARE, [(0, 0), (0, 1), (1, 0), (1, 1)])
    edges = set()
    for i, j in block:
        for d in ((1, 0), (-1, 0), (0, 1), (0, -1)):
            other = (i + d[0], j + d[1])
            if other not in block:
                edges.add(frozenset(((i, j), other)))
    assert len(edges) == 8
    assert iso.bound_square_edge(4) == 8.0
    assert len(lattice.edge_boundary(block)) == 8


def test_hex_bound_values():
    assert iso.bound_hex_vertex(6) == pytest.approx(6.0)
    assert iso.bound_hex_edge(6) == pytest.approx(6.0)
    assert iso.bound_hex_vertex(24) == pytest.approx(12.0)
    assert len(lattice.vertex_boundary(lattice.hex_disk(1))) == 12


def test_heavyhex_bound_values():
    assert iso.bound_heavyhex_vertex(12) == pytest.approx((-9 + math.sqrt(801)) / 5)
    assert iso.bound_heavyhex_vertex(12) == pytest.approx(3.8603, abs=1e-4)
    # sqrt(81 + 60*108) = sqrt(6561) = 81 exactly
    assert iso.bound_heavyhex_vertex(108) == pytest.approx(14.4, abs=1e-12)
    disk = lattice.hex_disk(0, LatticeKind.HEAVY_HEX)
    assert len(lattice.vertex_boundary(disk)) == 6


def test_heavyhex_bound_monotone_and_below_hex():
    values = [iso.bound_heavyhex_vertex(n) for n in range(0, 10_001, 97)]
    assert all(b2 > b1 for b1, b2 in zip(values, values[1:]))
    for n in range(0, 10_001, 53):
        assert iso.bound_heavyhex_vertex(n) <= iso.bound_hex_vertex(n) + 1e-12


# --- check_bound -----------------------------------------------------------


def test_check_bound_empty_set_gap_zero():
    report = iso.check_bound(VertexSet.of(LatticeKind.SQUARE, []), "vertex")
    assert report.satisfied and report.gap == 0.0


def test_check_bound_diamond3_frozen_gap():
    d3 = lattice.diamond(3)
    assert len(d3) == 25
    report = iso.check_bound(d3, "vertex")
    assert report.boundary_size == 16
    assert report.gap == pytest.approx(16 - 2 * math.sqrt(50))


def test_check_bound_hex_disk_edge_equality():
    report = iso.check_bound(lattice.hex_disk(0), "edge")
    assert report.satisfied
    assert report.gap == pytest.approx(0.0, abs=1e-9)


def test_check_bound_unknown_flavor():
    with pytest.raises(UnsupportedKindError):
        iso.check_bound(lattice.diamond(1), "face")
    with pytest.raises(UnsupportedKindError):
        iso.bound_value(LatticeKind.HEAVY_HEX, "edge", 12)  # needs base size


def test_heavy_square_uses_base_projection():
    block = VertexSet.of(LatticeKind.SQUARE, [(0, 0), (0, 1), (1, 0), (1, 1)])
    heavy = VertexSet.of(
        LatticeKind.HEAVY_SQUARE,
        [(lattice.BASE_TAG, v) for v in block]
        + [lattice.sub_vertex((0, 0), (0, 1)), lattice.sub_vertex((0, 0), (1, 0))],
    )
    report = iso.check_bound(heavy, "vertex")
    # bound computed from the 4 base vertices, not all 6 members
    assert report.bound_value == pytest.approx(2 * math.sqrt(8))
    assert report.satisfied


def test_violation_error_reports_details():
    bad = iso.BoundReport(LatticeKind.SQUARE, "vertex", 9, 2, 8.49)
    assert not bad.satisfied
    err = BoundViolationError(bad)
    assert "square" in str(err) and err.report is bad


# --- extremality -----------------------------------------------------------


@pytest.mark.parametrize("r", range(5))
def test_hex_disk_attains_both_bounds(r):
    disk = lattice.hex_disk(r)
    for which in ("vertex", "edge"):
        report = iso.check_bound(disk, which)
        assert report.gap == pytest.approx(0.0, abs=1e-9)


def test_diamond_gap_small_and_relatively_shrinking():
    rel = []
    for r in range(11):
        report = iso.check_bound(lattice.diamond(r), "vertex")
        assert 0 <= report.gap <= 2.0
        rel.append(report.gap / report.bound_value)
    assert all(b < a for a, b in zip(rel, rel[1:]))


@pytest.mark.parametrize("r", range(5))
def test_heavy_hex_disks_have_positive_gap(r):
    report = iso.check_bound(lattice.hex_disk(r, LatticeKind.HEAVY_HEX), "vertex")
    assert report.gap > 0
    with_outgoing = iso.check_bound(
        lattice.hex_disk(r, LatticeKind.HEAVY_HEX, include_outgoing=True), "vertex"
    )
    assert with_outgoing.satisfied


# --- random sweeps (full scale runs in the acceptance suite) ---------------


@pytest.mark.parametrize("kind", ALL_KINDS)
def test_random_connected_sets_satisfy_bounds(kind):
    rng = random.Random(f"iso-{kind.value}")
    for _ in range(100):
        s = iso.random_connected_set(kind, rng.randint(1, 200), rng)
        assert iso.check_bound(s, "vertex").satisfied
        assert iso.check_bound(s, "edge").satisfied


@pytest.mark.parametrize("kind", ALL_KINDS)
def test_random_arbitrary_sets_satisfy_bounds(kind):
    rng = random.Random(f"iso-arb-{kind.value}")
    for _ in range(50):
        s = iso.random_subset(kind, rng.randint(1, 200), rng)
        assert iso.check_bound(s, "vertex").satisfied
        assert iso.check_bound(s, "edge").satisfied


def test_random_connected_set_is_connected():
    rng = random.Random(3)
    s = iso.random_connected_set(LatticeKind.HEX, 60, rng)
    assert len(s) == 60
    seen = {next(iter(s))}
    frontier = [next(iter(s))]
    while frontier:
        v = frontier.pop()
        for u in lattice.neighbors(v, s.kind):
            if u in s and u not in seen:
                seen.add(u)
                frontier.append(u)
    assert seen == set(s.vertices)


def test_random_generators_are_seed_deterministic():
    a = iso.random_connected_set(LatticeKind.HEAVY_HEX, 40, random.Random(11))
    b = iso.random_connected_set(LatticeKind.HEAVY_HEX, 40, random.Random(11))
    assert a == b


# --- serialization ---------------------------------------------------------


def test_report_serialization_shapes():
    report = iso.check_bound(lattice.diamond(1), "vertex")
    row = report.to_csv_row()
    assert len(row) == len(iso.BOUND_CSV_HEADER)
    obj = report.to_json_obj()
    assert obj["kind"] == "square" and obj["satisfied"] is True
    assert obj["set_size"] == 5 and obj["boundary_size"] == 8
