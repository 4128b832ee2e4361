"""Command-line surface: bound checking, planning, simulation, budgets.

Every run that writes files also writes a ``manifest.json`` recording
the resolved configuration, the seed, input file hashes, and the output
names; ``covertlat rerun manifest.json --out DIR`` replays the run and
reproduces the CSV outputs byte for byte.

Exit codes: 0 success, 2 usage error, 3 infeasible placement,
4 runtime/simulation failure.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import random
import sys
from pathlib import Path

from . import __version__, budget, isoperimetry, lattice, placement, ramsey
from .errors import (
    BoundViolationError,
    CovertLatticeError,
    InfeasiblePlacementError,
)
from .lattice import LatticeKind

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_INFEASIBLE = 3
EXIT_RUNTIME = 4

SEED_ENV_VAR = "COVERTLAT_SEED"


def _sha256(path: Path) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(65536), b""):
            h.update(chunk)
    return h.hexdigest()


def _write_text(path: Path, text: str) -> None:
    tmp = path.with_name(path.name + ".tmp")
    tmp.write_text(text, encoding="utf-8")
    os.replace(tmp, path)


def _write_csv(path: Path, header, rows) -> None:
    lines = [",".join(str(c) for c in header)]
    lines.extend(",".join(str(c) for c in row) for row in rows)
    _write_text(path, "\n".join(lines) + "\n")


def _write_json(path: Path, obj) -> None:
    _write_text(path, json.dumps(obj, indent=2, sort_keys=True) + "\n")


def _write_manifest(out_dir: Path, command: str, config: dict, input_paths, outputs) -> None:
    manifest = {
        "command": command,
        "config": config,
        "seed": config.get("seed"),
        "version": __version__,
        "input_hashes": {str(p): _sha256(Path(p)) for p in input_paths},
        "outputs": sorted(outputs),
    }
    _write_json(out_dir / "manifest.json", manifest)


def _resolve_seed(flag_value: int) -> int:
    env = os.environ.get(SEED_ENV_VAR)
    if env is not None:
        try:
            return int(env)
        except ValueError as exc:
            raise UsageError(f"{SEED_ENV_VAR} must be an integer, got {env!r}") from exc
    return flag_value


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# runners: pure functions of (config, out_dir) so reruns are trivial
# ---------------------------------------------------------------------------


def _shape_sets(config: dict):
    kind = LatticeKind(config["kind"])
    shape = config["shape"]
    if shape == "diamond":
        if kind is not LatticeKind.SQUARE:
            raise UsageError("--shape diamond requires --kind square")
        yield lattice.diamond(config["radius"])
    elif shape == "disk":
        if kind not in (LatticeKind.HEX, LatticeKind.HEAVY_HEX):
            raise UsageError("--shape disk requires --kind hex or heavy-hex")
        yield lattice.hex_disk(
            config["radius"], kind, include_outgoing=config["include_outgoing"]
        )
    elif shape == "block":
        if kind is not LatticeKind.SQUARE:
            raise UsageError("--shape block requires --kind square")
        k = config["size"]
        yield lattice.VertexSet.of(
            kind, ((i, j) for i in range(k) for j in range(k))
        )
    elif shape == "random":
        rng = random.Random(config["seed"])
        for _ in range(config["count"]):
            size = rng.randint(1, config["max_size"])
            if config["arbitrary"]:
                yield isoperimetry.random_subset(kind, size, rng)
            else:
                yield isoperimetry.random_connected_set(kind, size, rng)
    else:
        raise UsageError(f"unknown shape {shape!r}")


def run_bounds(config: dict, out_dir: Path) -> list:
    reports = [
        isoperimetry.check_bound(s, config["which"]) for s in _shape_sets(config)
    ]
    rows = [r.to_csv_row() for r in reports]
    _write_csv(out_dir / "bounds.csv", isoperimetry.BOUND_CSV_HEADER, rows)
    _write_json(out_dir / "bounds.json", [r.to_json_obj() for r in reports])
    for row in rows:
        print(",".join(str(c) for c in row))
    return ["bounds.csv", "bounds.json"]


def run_plan(config: dict, out_dir: Path) -> list:
    device = placement.load_device(config["device"])
    anchor = tuple(config["anchor"]) if config.get("anchor") else None
    placed = placement.plan(device, config["n"], anchor=anchor)
    outputs = []
    if config["emit_json"]:
        _write_json(out_dir / "placement.json", placed.to_json_obj())
        outputs.append("placement.json")
    if config["emit_ascii"]:
        art = placement.ascii_map(device, placed)
        _write_text(out_dir / "map.txt", art + "\n")
        outputs.append("map.txt")
        print(art)
    print(
        f"overhead={placed.overhead} bound={placement.sqrt_law_bound(placed.n)!r}"
    )
    return outputs


def run_simulate(config: dict, out_dir: Path) -> list:
    device = placement.load_device(config["device"])
    placed = placement.plan(device, config["n"])
    schedule = placement.schedule_edges(device, placed)
    cfg = ramsey.RamseyConfig(seed=config["seed"], shots=config["shots"])
    crosstalk = ramsey.HopDecayCrosstalk(
        zeta_nn_hz=config["zeta_nn"],
        zeta_lr_hz=config["zeta_lr"],
        lr_decay=config["lr_decay"],
    )
    result = ramsey.run_experiment(
        device,
        placed,
        schedule,
        crosstalk,
        cfg,
        threshold_hz=config.get("threshold"),
        label=config.get("label") or f"{device.name}-n{config['n']}",
        collect_traces=config["traces"],
    )
    _write_csv(out_dir / "records.csv", ramsey.RECORDS_CSV_HEADER, result.records_csv_rows())
    _write_csv(out_dir / "summary.csv", ramsey.SUMMARY_CSV_HEADER, result.summary_csv_rows())
    outputs = ["records.csv", "summary.csv"]
    if config["traces"]:
        _write_csv(out_dir / "traces.csv", ramsey.TRACE_CSV_HEADER, result.traces_csv_rows())
        outputs.append("traces.csv")
    s = result.summary
    print(
        f"threshold_hz={result.threshold_hz!r} "
        f"nn={s.nn_detected}/{s.nn_total} nonnn={s.nonnn_detected}/{s.nonnn_total}"
    )
    return outputs


def run_budget(config: dict, out_dir: Path) -> list:
    cb = budget.k_shot_budget(config["delta"], config["k"])
    obj = cb.to_json_obj()
    if config.get("target") is not None:
        obj["target"] = config["target"]
        obj["max_shots"] = budget.max_shots(config["delta"], config["target"])
    _write_json(out_dir / "budget.json", obj)
    print(json.dumps(obj, indent=2, sort_keys=True))
    return ["budget.json"]


_RUNNERS = {
    "bounds": run_bounds,
    "plan": run_plan,
    "simulate": run_simulate,
    "budget": run_budget,
}


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="covertlat",
        description="Isoperimetric placement planning and spectator-detection simulation.",
    )
    parser.add_argument("--version", action="version", version=f"covertlat {__version__}")
    subs = parser.add_subparsers(dest="command", required=True)

    b = subs.add_parser("bounds", help="check boundary-size lower bounds on vertex sets")
    b.add_argument("--kind", required=True, choices=[k.value for k in LatticeKind])
    b.add_argument("--shape", required=True, choices=["diamond", "disk", "block", "random"])
    b.add_argument("--radius", type=int, default=0, help="diamond/disk radius")
    b.add_argument("--size", type=int, default=1, help="block side length")
    b.add_argument("--count", type=int, default=100, help="number of random sets")
    b.add_argument("--max-size", type=int, default=200, help="largest random set size")
    b.add_argument("--arbitrary", action="store_true", help="sample non-connected random sets")
    b.add_argument("--include-outgoing", action="store_true",
                   help="pull the disk's outgoing inserted vertices into the set")
    b.add_argument("--which", default="vertex", choices=["vertex", "edge"])
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--out", default=".")

    p = subs.add_parser("plan", help="place n qubits with an idle separating buffer")
    p.add_argument("device", help="device JSON file")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--anchor", type=int, nargs=2, default=None, metavar=("A", "B"))
    p.add_argument("--json", dest="emit_json", action="store_true", default=True)
    p.add_argument("--no-json", dest="emit_json", action="store_false")
    p.add_argument("--ascii", dest="emit_ascii", action="store_true", default=True)
    p.add_argument("--no-ascii", dest="emit_ascii", action="store_false")
    p.add_argument("--out", default=".")

    s = subs.add_parser("simulate", help="simulate the spectator detection sweep")
    s.add_argument("device", help="device JSON file")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--zeta-nn", type=float, default=0.0, help="nearest-neighbor shift (Hz)")
    s.add_argument("--zeta-lr", type=float, default=0.0, help="long-range shift at 2 hops (Hz)")
    s.add_argument("--lr-decay", type=float, default=0.5, help="per-hop long-range decay factor")
    s.add_argument("--shots", type=int, default=1024)
    s.add_argument("--threshold", type=float, default=None,
                   help="detection threshold in Hz (default: calibrate from baselines)")
    s.add_argument("--label", default=None)
    s.add_argument("--traces", action="store_true", help="dump per-qubit traces")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--out", default=".")

    g = subs.add_parser("budget", help="multi-shot covertness budget arithmetic")
    g.add_argument("--delta", type=float, required=True)
    g.add_argument("--k", type=int, default=1)
    g.add_argument("--target", type=float, default=None,
                   help="also report the largest k with delta*sqrt(k) <= target")
    g.add_argument("--out", default=".")

    r = subs.add_parser("rerun", help="replay a run from its manifest")
    r.add_argument("manifest", help="manifest JSON file")
    r.add_argument("--out", default=".")
    return parser


def _config_from_args(args) -> tuple:
    if args.command == "bounds":
        config = {
            "kind": args.kind,
            "shape": args.shape,
            "radius": args.radius,
            "size": args.size,
            "count": args.count,
            "max_size": args.max_size,
            "arbitrary": args.arbitrary,
            "include_outgoing": args.include_outgoing,
            "which": args.which,
            "seed": _resolve_seed(args.seed),
        }
        if args.radius < 0 or args.size < 1 or args.count < 1 or args.max_size < 1:
            raise UsageError("radius/size/count/max-size flags must be positive")
        return config, []
    if args.command == "plan":
        device = str(Path(args.device))
        if args.n < 1:
            raise UsageError("--n must be >= 1")
        return {
            "device": device,
            "n": args.n,
            "anchor": list(args.anchor) if args.anchor else None,
            "emit_json": args.emit_json,
            "emit_ascii": args.emit_ascii,
            "seed": 0,
        }, [device]
    if args.command == "simulate":
        device = str(Path(args.device))
        if args.n < 1:
            raise UsageError("--n must be >= 1")
        if args.shots < 1:
            raise UsageError("--shots must be >= 1")
        if args.lr_decay < 0:
            raise UsageError("--lr-decay must be nonnegative")
        return {
            "device": device,
            "n": args.n,
            "zeta_nn": args.zeta_nn,
            "zeta_lr": args.zeta_lr,
            "lr_decay": args.lr_decay,
            "shots": args.shots,
            "threshold": args.threshold,
            "label": args.label,
            "traces": args.traces,
            "seed": _resolve_seed(args.seed),
        }, [device]
    if args.command == "budget":
        if args.delta < 0:
            raise UsageError("--delta must be nonnegative")
        if args.k < 1:
            raise UsageError("--k must be >= 1")
        if args.target is not None and args.target < 0:
            raise UsageError("--target must be nonnegative")
        return {
            "delta": args.delta,
            "k": args.k,
            "target": args.target,
            "seed": 0,
        }, []
    raise UsageError(f"unknown command {args.command!r}")


def _dispatch(command: str, config: dict, input_paths, out_dir: Path) -> int:
    out_dir.mkdir(parents=True, exist_ok=True)
    outputs = _RUNNERS[command](config, out_dir)
    _write_manifest(out_dir, command, config, input_paths, outputs)
    return EXIT_OK


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "rerun":
            manifest_path = Path(args.manifest)
            manifest = json.loads(manifest_path.read_text(encoding="utf-8"))
            command = manifest["command"]
            if command not in _RUNNERS:
                raise UsageError(f"manifest names unknown command {command!r}")
            config = manifest["config"]
            for path, digest in manifest.get("input_hashes", {}).items():
                if not Path(path).exists():
                    raise UsageError(f"manifest input {path} is missing")
                if _sha256(Path(path)) != digest:
                    raise UsageError(f"manifest input {path} changed since the run")
            return _dispatch(command, config, list(manifest.get("input_hashes", {})), Path(args.out))
        config, inputs = _config_from_args(args)
        return _dispatch(args.command, config, inputs, Path(args.out))
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InfeasiblePlacementError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except BoundViolationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME
    except CovertLatticeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME
    except (OSError, ValueError, KeyError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
