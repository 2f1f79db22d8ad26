"""Command-line front end: config parsing, dispatch and bit-stable output.

Output files are deterministic for a given config: metadata carries no
timestamps, floats are written in shortest round-trip form, line endings are
LF.  A CSV starts with one ``# ergokit-metadata: {...}`` comment holding the
full config, the dimensions needed for reference lines, and any regressions.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict

import numpy as np

from .harness import (
    EXPERIMENTS,
    MODELS,
    RegressionResult,
    SweepConfig,
    SweepRecord,
    run_experiment,
    system_ancilla_dims,
)

try:
    from importlib.metadata import version as _pkg_version

    VERSION = _pkg_version("ergokit")
except Exception:  # pragma: no cover - fallback for source checkouts
    VERSION = "0.1.0"

METADATA_PREFIX = "# ergokit-metadata: "

_UNKNOWN_COLUMNS = {
    "1": ("Wrc_mean", "Wrc_se", "OE1_mean", "OE1_se", "fid_mean"),
    "2": ("Wbar_mean", "Wbar_se", "OE2_mean", "OE2_se", "fid_mean"),
    "both": (
        "Wrc_mean", "Wrc_se", "Wbar_mean", "Wbar_se",
        "OE1_mean", "OE1_se", "OE2_mean", "OE2_se", "fid_mean",
    ),
}


def schema_for(cfg: SweepConfig) -> tuple[str, ...]:
    """Fixed column order per experiment (and protocol selection)."""
    if cfg.experiment in ("known", "ancilla-scaling"):
        base = ("param", "S_lin_mean", "S_lin_se", "W_mean", "W_se", "dW_mean", "dW_se")
        if cfg.experiment == "ancilla-scaling":
            return ("param", "S_lin_mean", "S_lin_se", "dW_mean", "dW_se")
        return base
    if cfg.experiment == "tripartite":
        return ("param", "c1", "c2", "S_lin_mean", "S_lin_se", "W_mean", "W_se", "dW_mean", "dW_se")
    if cfg.experiment == "unknown":
        return ("param",) + _UNKNOWN_COLUMNS[cfg.protocol]
    if cfg.experiment == "coarse-scan":
        return ("param", "n") + _UNKNOWN_COLUMNS[cfg.protocol]
    return ("param", "r_mean", "n_phases", "n_sectors")


def build_metadata(cfg: SweepConfig, regressions: dict[str, RegressionResult]) -> dict:
    d_s, d_a = system_ancilla_dims(cfg)
    return {
        "toolkit": "ergokit",
        "version": VERSION,
        "experiment": cfg.experiment,
        "config": cfg.to_dict(),
        "dims": {"d_system": d_s, "d_ancilla": d_a},
        "columns": list(schema_for(cfg)),
        "regressions": {name: asdict(reg) for name, reg in regressions.items()},
    }


def emit(
    records: list[SweepRecord],
    schema: tuple[str, ...],
    fmt: str,
    path: str,
    metadata: dict,
) -> None:
    """Write records to ``path`` as CSV or JSON with embedded metadata."""
    for rec in records:
        missing = [c for c in schema if c != "param" and c not in rec.values]
        if missing:
            raise ValueError(f"record lacks columns {missing} required by the schema")
    if fmt == "csv":
        lines = [METADATA_PREFIX + json.dumps(metadata, sort_keys=True)]
        lines.append(",".join(schema))
        for rec in records:
            lines.append(",".join(repr(float(rec.get(c))) for c in schema))
        text = "\n".join(lines) + "\n"
    elif fmt == "json":
        payload = {
            "metadata": metadata,
            "records": [{c: float(rec.get(c)) for c in schema} for rec in records],
        }
        text = json.dumps(payload, sort_keys=True, indent=1) + "\n"
    else:
        raise ValueError(f"format must be csv or json, got {fmt!r}")
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def read_table(path: str) -> tuple[dict, list[str], list[dict[str, float]]]:
    """Parse a CSV or JSON file written by :func:`emit`."""
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    if text.lstrip().startswith("{"):
        payload = json.loads(text)
        metadata = payload["metadata"]
        columns = list(metadata.get("columns", []))
        return metadata, columns, payload["records"]
    metadata: dict = {}
    columns: list[str] = []
    rows: list[dict[str, float]] = []
    for line in text.splitlines():
        if not line.strip():
            continue
        if line.startswith("#"):
            if line.startswith(METADATA_PREFIX):
                metadata = json.loads(line[len(METADATA_PREFIX):])
            continue
        if not columns:
            columns = line.split(",")
            continue
        cells = line.split(",")
        rows.append({c: float(v) for c, v in zip(columns, cells)})
    return metadata, columns, rows


def parse_grid(text: str) -> tuple[float, ...]:
    """Grid syntax: ``min:max:count`` (inclusive, linear), a comma list, or
    one value."""
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3:
            raise ValueError(f"grid must be min:max:count, got {text!r}")
        lo, hi, count = float(parts[0]), float(parts[1]), int(parts[2])
        if count < 1:
            raise ValueError(f"grid count must be >= 1, got {count}")
        return tuple(float(v) for v in np.linspace(lo, hi, count))
    if "," in text:
        return tuple(float(v) for v in text.split(","))
    return (float(text),)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ergokit",
        description="Work-extraction sweeps for kicked-top and kicked-Ising Floquet models.",
    )
    sub = parser.add_subparsers(dest="experiment", required=True)
    for experiment in EXPERIMENTS:
        p = sub.add_parser(experiment, help=f"run the {experiment} experiment")
        p.add_argument("--model", choices=MODELS, default=None)
        p.add_argument("--kappa", default=None, help="kick grid min:max:count (kicked top)")
        p.add_argument("--m", default=None, help="kick grid min:max:count (kicked Ising)")
        p.add_argument("--ensemble", type=int, default=None)
        p.add_argument("--time-steps", type=int, default=None)
        p.add_argument("--coarse-n", type=int, default=None)
        p.add_argument("--coarse-sizes", default=None, help="comma list of cell sizes")
        p.add_argument("--protocol", choices=("1", "2", "both"), default=None)
        p.add_argument("--c1", type=float, default=None)
        p.add_argument("--c2", type=float, default=None)
        p.add_argument("--seed", type=int, default=None)
        p.add_argument("--j-system", type=float, default=None)
        p.add_argument("--j-ancilla", type=float, default=None)
        p.add_argument("--j-aux", type=float, default=None)
        p.add_argument("--alpha", type=float, default=None)
        p.add_argument("--ising-length", type=int, default=None)
        p.add_argument("--ising-coupling", type=float, default=None)
        p.add_argument("--ising-tilts", default=None, help="comma list of tilt angles, one per site")
        p.add_argument("--ising-ancilla-sites", default=None, help="comma list of ancilla sites (1-based)")
        p.add_argument("--chaotic-kappa", type=float, default=None)
        p.add_argument("--ancilla-spins", default=None, help="comma list of ancilla spins")
        p.add_argument("--full-spectrum", action="store_true", help="skip symmetry desymmetrization (spectral)")
        p.add_argument("--workers", type=int, default=None)
        p.add_argument("--config", default=None, help="JSON config file; flags override it")
        p.add_argument("--out", required=True, help="output file path")
        p.add_argument("--format", choices=("csv", "json"), default="csv")
    return parser


_FLAG_TO_FIELD = {
    "model": "model",
    "ensemble": "ensemble",
    "time_steps": "time_steps",
    "coarse_n": "coarse_n",
    "protocol": "protocol",
    "c1": "c1",
    "c2": "c2",
    "seed": "seed",
    "j_system": "j_system",
    "j_ancilla": "j_ancilla",
    "j_aux": "j_aux",
    "alpha": "alpha",
    "ising_length": "ising_length",
    "ising_coupling": "ising_coupling",
    "chaotic_kappa": "chaotic_kappa",
    "workers": "workers",
}


def parse_config(argv: list[str]) -> tuple[SweepConfig, str, str]:
    """Resolve argv (plus an optional config file) into a validated
    SweepConfig; returns (config, out_path, format)."""
    args = _build_parser().parse_args(argv)
    data: dict = {}
    if args.config:
        with open(args.config, encoding="utf-8") as fh:
            loaded = json.load(fh)
        if "metadata" in loaded:
            loaded = loaded["metadata"]
        if "config" in loaded:
            loaded = loaded["config"]
        data.update(loaded)
    data["experiment"] = args.experiment
    for flag, fieldname in _FLAG_TO_FIELD.items():
        value = getattr(args, flag)
        if value is not None:
            data[fieldname] = value
    if args.kappa is not None and args.m is not None:
        raise ValueError("give either --kappa or --m, not both")
    if args.kappa is not None:
        data["grid"] = list(parse_grid(args.kappa))
        data.setdefault("model", "kicked-top")
    if args.m is not None:
        data["grid"] = list(parse_grid(args.m))
        data.setdefault("model", "kicked-ising")
    if args.coarse_sizes is not None:
        data["coarse_sizes"] = [int(v) for v in args.coarse_sizes.split(",")]
    if args.ancilla_spins is not None:
        data["ancilla_spins"] = [float(v) for v in args.ancilla_spins.split(",")]
    if args.ising_tilts is not None:
        data["ising_tilts"] = [float(v) for v in args.ising_tilts.split(",")]
    if args.ising_ancilla_sites is not None:
        data["ising_ancilla_sites"] = [int(v) for v in args.ising_ancilla_sites.split(",")]
    if args.full_spectrum:
        data["desymmetrize"] = False
    cfg = SweepConfig.from_dict(data).validate()
    return cfg, args.out, args.format


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    try:
        cfg, out_path, fmt = parse_config(argv)
    except SystemExit as exc:  # argparse already printed a diagnostic
        return int(exc.code or 0)
    except (ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"ergokit: config error: {exc}", file=sys.stderr)
        return 2
    try:
        records, regressions = run_experiment(cfg)
        emit(records, schema_for(cfg), fmt, out_path, build_metadata(cfg, regressions))
    except (ValueError, OSError) as exc:
        print(f"ergokit: {exc}", file=sys.stderr)
        return 1
    print(f"wrote {len(records)} records to {out_path}")
    for name, reg in regressions.items():
        print(f"  {name}: slope={reg.slope:.6g} intercept={reg.intercept:.6g} r={reg.r:.4f} n={reg.n}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
