"""Reading structures and writing matrices, features and fit reports.

Structure JSON::

    {"components": [{"name": "l1", "closed": true, "vertices": [[x, y, z], ...]}, ...]}

Polyline CSV has the header ``component,x,y,z``; rows of one component are
consecutive vertices in order. All components are open unless a sidecar
``<file>.csv.json`` holding ``{"closed": {"<name>": true, ...}}`` says
otherwise.
"""
from __future__ import annotations

import csv
import json
from pathlib import Path

import numpy as np

from mgli.errors import InvalidArgumentError
from mgli.geometry import Polyline, Structure

__all__ = [
    "structure_from_dict",
    "structure_to_dict",
    "read_structure_json",
    "write_structure_json",
    "read_polyline_csv",
    "read_structure",
    "write_matrix_csv",
    "write_features_csv",
    "read_labeled_csv",
]


def structure_from_dict(data: dict) -> Structure:
    try:
        comps = data["components"]
        return Structure([(str(c["name"]), Polyline(np.asarray(c["vertices"], dtype=float),
                                                      bool(c.get("closed", False))))
                          for c in comps])
    except (KeyError, TypeError) as exc:
        raise InvalidArgumentError(f"malformed structure JSON: {exc}") from exc


def structure_to_dict(s: Structure) -> dict:
    return {"components": [{"name": name, "closed": p.closed, "vertices": p.vertices.tolist()}
                           for name, p in s.components.items()]}


def read_structure_json(path) -> Structure:
    with open(path) as fh:
        return structure_from_dict(json.load(fh))


def write_structure_json(s: Structure, path):
    with open(path, "w") as fh:
        json.dump(structure_to_dict(s), fh, indent=1)


def read_polyline_csv(path) -> Structure:
    path = Path(path)
    verts: dict[str, list] = {}
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None or [f.strip() for f in reader.fieldnames] != ["component", "x", "y", "z"]:
            raise InvalidArgumentError(f"{path}: expected header component,x,y,z")
        for lineno, row in enumerate(reader, start=2):
            try:
                xyz = [float(row[k]) for k in ("x", "y", "z")]
            except (TypeError, ValueError):
                raise InvalidArgumentError(f"{path}:{lineno}: bad coordinate") from None
            verts.setdefault(row["component"].strip(), []).append(xyz)
    closed = {}
    sidecar = path.with_name(path.name + ".json")
    if sidecar.exists():
        closed = json.loads(sidecar.read_text()).get("closed", {})
    return Structure({name: Polyline(np.array(v), bool(closed.get(name, False)))
                      for name, v in verts.items()})


def read_structure(path, kind: str | None = None) -> Structure:
    """Read a structure, guessing the format from the suffix if ``kind`` is None."""
    kind = kind or {".json": "structure-json", ".csv": "polyline-csv"}.get(Path(path).suffix.lower())
    if kind == "structure-json":
        return read_structure_json(path)
    if kind == "polyline-csv":
        return read_polyline_csv(path)
    raise InvalidArgumentError(f"cannot read a structure from {path} (kind={kind!r})")


def _write_table(path, corner, col_labels, row_labels, values, fmt):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow([corner, *col_labels])
        for label, row in zip(row_labels, values):
            w.writerow([label, *(fmt(v) for v in row)])


def _g9(v):
    return f"{v:.9g}"


def write_matrix_csv(m, path):
    """Write ``m.values`` to ``path`` and ``m.distances`` to ``<stem>.dist.csv``.

    Returns the two paths written.
    """
    path = Path(path)
    stem = path.name[:-4] if path.name.endswith(".csv") else path.name
    dist_path = path.with_name(stem + ".dist.csv")
    _write_table(path, "segment", m.col_labels, m.row_labels, m.values, _g9)
    _write_table(dist_path, "segment", m.col_labels, m.row_labels, m.distances, _g9)
    return path, dist_path


def write_features_csv(f, path):
    _write_table(path, "segment", f.bin_labels, f.segment_labels, f.values, _g9)
    return Path(path)


def read_labeled_csv(path):
    """Read a table written by this module; returns ``(row_labels, col_labels, values)``."""
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    cols = rows[0][1:]
    labels = [r[0] for r in rows[1:]]
    values = np.array([[float(v) for v in r[1:]] for r in rows[1:]]).reshape(len(labels), len(cols))
    return labels, cols, values
