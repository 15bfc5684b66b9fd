"""Deterministic JSON/CSV writing and run metadata."""

from __future__ import annotations

import csv
import json
import sys
from datetime import datetime, timezone
from pathlib import Path

import numpy as np

from . import __version__


def plain(obj):
    """Recursively convert numpy scalars/arrays and tuples to JSON-native values."""
    if isinstance(obj, dict):
        return {str(k): plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [plain(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [plain(v) for v in obj.tolist()]
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, (np.floating, float)):
        return float(obj)
    if isinstance(obj, np.bool_):
        return bool(obj)
    return obj


def dumps(obj) -> str:
    # float repr is the shortest string that round-trips (<= 17 significant digits)
    return json.dumps(plain(obj), indent=2, allow_nan=True) + "\n"


def run_metadata(subcommand: str, params=None, **extra) -> dict:
    meta = {"tool": "ifsdim", "version": __version__, "subcommand": subcommand}
    if params is not None:
        meta["params"] = params.as_dict()
    meta.update(extra)
    return meta


def write_sidecar(path: Path, metadata: dict) -> Path:
    """Metadata plus timestamp next to a data file; the data file itself stays timestamp-free."""
    side = Path(str(path) + ".meta.json")
    full = dict(metadata, timestamp=datetime.now(timezone.utc).isoformat(timespec="seconds"))
    side.write_text(dumps(full))
    return side


def write_json(path, payload: dict, metadata: dict) -> None:
    text = dumps(dict(payload, metadata=metadata))
    if path is None:
        sys.stdout.write(text)
        return
    path = Path(path)
    path.write_text(text)
    write_sidecar(path, metadata)


def write_csv(path, header, rows, metadata: dict) -> None:
    def emit(fh):
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for row in rows:
            w.writerow([_cell(v) for v in row])

    if path is None:
        emit(sys.stdout)
        return
    path = Path(path)
    with open(path, "w", newline="") as fh:
        emit(fh)
    write_sidecar(path, metadata)


def _cell(v):
    if isinstance(v, (int, np.integer)) and not isinstance(v, bool):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return f"{float(v):.17g}"
    return str(v)
