#!/usr/bin/env python3
"""Regenerate the bundled device files in src/covertlat/devices/.

Both layouts are approximations assembled from public descriptions of
the machines (qubit counts, lattice family, row structure); they are
working data for the planner and simulator, not vendor ground truth.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from covertlat import lattice
from covertlat.lattice import LatticeKind
from covertlat.placement import build_device

OUT_DIR = Path(__file__).resolve().parents[1] / "src" / "covertlat" / "devices"


def emerald() -> dict:
    """54-qubit square-lattice layout: an 8x7 grid with two corners chamfered.

    Row-major ids over rows of widths 6,7,7,7,7,7,7,6; couplers at every
    lattice adjacency.  The real machine omits couplers at some lattice
    positions, which this idealized file does not reproduce.
    """
    cells = [
        (i, j)
        for i in range(8)
        for j in range(7)
        if (i, j) not in ((0, 6), (7, 0))
    ]
    qubits = {qid: v for qid, v in enumerate(sorted(cells))}
    vertex_to_id = {v: q for q, v in qubits.items()}
    couplers = [
        (q, vertex_to_id[w])
        for v, q in vertex_to_id.items()
        for w in lattice.neighbors(v, LatticeKind.SQUARE)
        if w in vertex_to_id and q < vertex_to_id[w]
    ]
    device = build_device("emerald", LatticeKind.SQUARE, qubits, couplers)
    doc = device.to_json_obj()
    doc["provenance"] = (
        "Approximate 54-qubit square-lattice layout with idealized full "
        "coupling; assembled from public qubit counts, not a vendor map."
    )
    return doc


def ibm_fez() -> dict:
    """156-qubit heavy-hex layout: 8 rows of 16 plus 7 connector rows of 4.

    Row r holds qubits 20r..20r+15 left to right; the four connectors
    below it are 20r+16..20r+19.  Even-index row qubits are cell corners,
    odd-index ones sit on the horizontal links (the last column dangles),
    and connectors sit on the vertical links, alternating offset by gap.
    """

    def corner(r: int, m: int):
        # Brick-wall corner (row r, horizontal index m) in cell coordinates.
        i = (m + 1 - r) // 2
        s = 1 if (r + m) % 2 == 0 else 0
        return (i, r, s)

    qubits = {}
    for r in range(8):
        for c in range(16):
            qid = 20 * r + c
            if c % 2 == 0:
                qubits[qid] = lattice.base_vertex(corner(r, c // 2))
            else:
                qubits[qid] = lattice.sub_vertex(corner(r, (c - 1) // 2), corner(r, (c + 1) // 2))
    for r in range(7):
        for k in range(4):
            qid = 20 * r + 16 + k
            m = 2 * k + (r % 2)
            qubits[qid] = lattice.sub_vertex(corner(r, m), corner(r + 1, m))

    couplers = []
    for r in range(8):
        for c in range(15):
            couplers.append((20 * r + c, 20 * r + c + 1))
    for r in range(7):
        for k in range(4):
            qid = 20 * r + 16 + k
            m = 2 * k + (r % 2)
            couplers.append((qid, 20 * r + 2 * m))
            couplers.append((qid, 20 * (r + 1) + 2 * m))

    device = build_device("ibm_fez", LatticeKind.HEAVY_HEX, qubits, couplers)
    doc = device.to_json_obj()
    doc["provenance"] = (
        "Approximate 156-qubit heavy-hex layout (8 rows of 16 qubits, 7 "
        "connector rows of 4); assembled from public row structure, not a "
        "vendor map."
    )
    return doc


def main() -> None:
    OUT_DIR.mkdir(parents=True, exist_ok=True)
    for name, doc in (("emerald", emerald()), ("ibm_fez", ibm_fez())):
        path = OUT_DIR / f"{name}.json"
        path.write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n", encoding="utf-8")
        print(f"wrote {path} ({len(doc['qubits'])} qubits, {len(doc['couplers'])} couplers)")


if __name__ == "__main__":
    main()
