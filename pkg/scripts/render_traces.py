#!/usr/bin/env python3
"""Render decay-curve plots from a traces.csv produced by
``covertlat simulate --traces``.

One PNG per requested qubit: baseline points and fit curve against the
active edge-set run, probability of |0> versus delay.
"""

from __future__ import annotations

import argparse
import csv
from collections import defaultdict
from pathlib import Path


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("traces", help="traces.csv from a simulate run")
    ap.add_argument("--qubits", type=int, nargs="*", default=None,
                    help="qubit ids to plot (default: all)")
    ap.add_argument("--edge-set", type=int, default=0)
    ap.add_argument("--out-dir", default="trace_plots")
    args = ap.parse_args()

    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    series = defaultdict(list)  # (qubit, role) -> [(tau, p_hat, p_fit)]
    with open(args.traces, newline="", encoding="utf-8") as fh:
        for row in csv.DictReader(fh):
            qubit = int(row["qubit"])
            edge_set = int(row["edge_set"])
            role = row["role"]
            if role == "active" and edge_set != args.edge_set:
                continue
            series[(qubit, role)].append(
                (float(row["tau_s"]), float(row["p_hat"]), float(row["p_fit"]))
            )

    qubits = sorted({q for q, _ in series})
    if args.qubits is not None:
        qubits = [q for q in qubits if q in set(args.qubits)]
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)

    for qubit in qubits:
        base = sorted(series.get((qubit, "baseline0"), []))
        active = sorted(series.get((qubit, "active"), []))
        if not base or not active:
            continue
        fig, ax = plt.subplots(figsize=(6, 4))
        taus = [t * 1e6 for t, _, _ in base]
        ax.plot(taus, [p for _, p, _ in base], "o", color="tab:blue", ms=4, label="baseline")
        ax.plot(taus, [f for _, _, f in base], "-", color="tab:blue", lw=1)
        ax.plot(taus, [p for _, p, _ in active], "s", color="tab:red", ms=4,
                label=f"edge set {args.edge_set} active")
        ax.plot(taus, [f for _, _, f in active], "--", color="tab:red", lw=1)
        ax.set_xlabel("delay (us)")
        ax.set_ylabel("P(|0>)")
        ax.set_ylim(-0.05, 1.05)
        ax.set_title(f"qubit {qubit}")
        ax.legend(loc="upper right", fontsize=8)
        fig.tight_layout()
        fig.savefig(out_dir / f"qubit_{qubit:03d}.png", dpi=150)
        plt.close(fig)
        print(f"wrote {out_dir / f'qubit_{qubit:03d}.png'}")


if __name__ == "__main__":
    main()
