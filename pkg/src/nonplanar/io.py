"""Serialization: JSON reports, Wavefront OBJ meshes and residual CSV tables.

Floats are always written in shortest round-trip form (``repr``).
"""
import csv
import json
import math

import numpy as np

CSV_COLUMNS = ("x", "y", "z", "jump_residual", "det_deviation", "ball_margin")


def jsonable(obj):
    """Convert numpy containers/scalars to plain Python; NaN/inf become None."""
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return jsonable(obj.tolist())
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        return x if math.isfinite(x) else None
    return obj


def dumps(obj):
    return json.dumps(jsonable(obj), indent=2, allow_nan=False) + "\n"


def write_json(path, obj):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(obj))


def _fmt(x):
    x = float(x)
    return repr(x) if math.isfinite(x) else ""


def write_obj(path, mesh):
    with open(path, "w", encoding="ascii") as fh:
        fh.write(f"# vertices {len(mesh.vertices)} faces {len(mesh.triangles)}\n")
        for v in mesh.vertices:
            fh.write("v " + " ".join(_fmt(c) for c in v) + "\n")
        for t in mesh.triangles:
            fh.write("f " + " ".join(str(int(i) + 1) for i in t) + "\n")


def read_obj(path):
    """Strict reader for the subset written by ``write_obj``.

    Accepts only comments, ``v x y z`` and triangular ``f i j k`` lines with
    1-based indices that refer to existing vertices.
    """
    vertices, faces = [], []
    with open(path, encoding="ascii") as fh:
        for lineno, line in enumerate(fh, 1):
            parts = line.split()
            if not parts or parts[0].startswith("#"):
                continue
            if parts[0] == "v" and len(parts) == 4:
                vertices.append([float(p) for p in parts[1:]])
            elif parts[0] == "f" and len(parts) == 4:
                faces.append([int(p) for p in parts[1:]])
            else:
                raise ValueError(f"line {lineno}: unexpected record {line.strip()!r}")
    faces = np.array(faces, dtype=int).reshape(-1, 3)
    if faces.size and (faces.min() < 1 or faces.max() > len(vertices)):
        raise ValueError("face index out of range")
    return np.array(vertices, dtype=float).reshape(-1, 3), faces - 1


def write_residual_csv(path, mesh, report):
    pv = report.per_vertex
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(CSV_COLUMNS)
        for i, v in enumerate(mesh.vertices):
            writer.writerow(
                [_fmt(v[0]), _fmt(v[1]), _fmt(v[2]),
                 _fmt(pv["jump_residual"][i]), _fmt(pv["det_deviation"][i]), _fmt(pv["ball_margin"][i])]
            )
