"""Aggregate JSON, Wavefront OBJ and SVG junction drawings."""

from __future__ import annotations

import json
import math
from typing import Any

import numpy as np

from .aggregates import KINDS, Aggregate
from .analysis import FaceJunction, junction_projection
from .exceptions import ParseError
from .geometry import Tetrahedron

SVG_UNITS_PER_EDGE = 100.0


def format_number(x: float) -> str:
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    x = float(x)
    if not math.isfinite(x):
        raise ValueError(f"cannot serialise non-finite number {x!r}")
    # fold -0.0 into 0.0 so the text survives a parse/serialise round trip
    return format(x + 0.0, ".17g")


def dumps(obj: Any, indent: int = 2, _level: int = 0) -> str:
    """Deterministic JSON with 17 significant digits for every float.

    Dict keys keep insertion order; numpy scalars and arrays are accepted.
    """
    pad = " " * (indent * (_level + 1))
    end = " " * (indent * _level)
    if obj is None:
        return "null"
    if isinstance(obj, (bool, np.bool_)):
        return "true" if obj else "false"
    if isinstance(obj, (int, float, np.integer, np.floating)):
        return format_number(obj)
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, np.ndarray):
        obj = obj.tolist()
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {dumps(v, indent, _level + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        if all(isinstance(v, (int, float, np.integer, np.floating)) and not isinstance(v, bool) for v in obj):
            return "[" + ", ".join(format_number(v) for v in obj) + "]"
        items = [pad + dumps(v, indent, _level + 1) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    raise TypeError(f"cannot serialise {type(obj).__name__}")


# -- aggregate JSON --------------------------------------------------------------


def aggregate_to_dict(agg: Aggregate) -> dict:
    return {
        "kind": agg.kind,
        "edge_length": agg.edge_length,
        "parameters": dict(sorted(agg.parameters.items())),
        "tetrahedra": [{"id": t.id, "vertices": t.vertices.tolist()} for t in agg.tetrahedra],
    }


def aggregate_to_json(agg: Aggregate) -> str:
    return dumps(aggregate_to_dict(agg)) + "\n"


def _field(data, key, where, kind):
    if not isinstance(data, dict) or key not in data:
        raise ParseError(f"missing field '{where}{key}'")
    value = data[key]
    if kind is float:
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise ParseError(f"field '{where}{key}' must be a number, got {type(value).__name__}")
        return float(value)
    if not isinstance(value, kind):
        raise ParseError(f"field '{where}{key}' must be {kind.__name__}, got {type(value).__name__}")
    return value


def aggregate_from_dict(data: dict) -> Aggregate:
    kind = _field(data, "kind", "", str)
    if kind not in KINDS:
        raise ParseError(f"field 'kind': unknown aggregate kind {kind!r}")
    a = _field(data, "edge_length", "", float)
    params = data.get("parameters", {})
    if not isinstance(params, dict):
        raise ParseError("field 'parameters' must be an object")
    tets = []
    for i, entry in enumerate(_field(data, "tetrahedra", "", list)):
        where = f"tetrahedra[{i}]."
        tid = _field(entry, "id", where, int)
        verts = _field(entry, "vertices", where, list)
        try:
            arr = np.array(verts, dtype=float)
        except (TypeError, ValueError) as exc:
            raise ParseError(f"field '{where}vertices': {exc}") from None
        if arr.shape != (4, 3):
            raise ParseError(f"field '{where}vertices' must be 4 points of 3 numbers, got shape {arr.shape}")
        tets.append(Tetrahedron(tid, arr, a))
    for i, t in enumerate(tets):
        try:
            t.validate()
        except ValueError as exc:
            raise ParseError(f"field 'tetrahedra[{i}].vertices': {exc}") from None
    try:
        return Aggregate(kind, a, tets, params)
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def aggregate_from_json(text: str) -> Aggregate:
    """Parse aggregate JSON; errors name the offending line/column or field."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    return aggregate_from_dict(data)


def read_aggregate(path) -> Aggregate:
    with open(path, encoding="utf-8") as fh:
        return aggregate_from_json(fh.read())


def write_aggregate(agg: Aggregate, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(aggregate_to_json(agg))


# -- OBJ -------------------------------------------------------------------------


def aggregate_to_obj(agg: Aggregate) -> str:
    """One ``o tet_<id>`` group per tetrahedron, faces wound outward, no shared vertices."""
    lines = []
    base = 1
    for t in agg.tetrahedra:
        lines.append(f"o tet_{t.id}")
        for v in t.vertices:
            lines.append("v " + " ".join(format_number(c) for c in v))
        for f in range(4):
            lines.append("f " + " ".join(str(base + i) for i in t.face_labels(f)))
        base += 4
    return "\n".join(lines) + "\n"


def write_obj(agg: Aggregate, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(aggregate_to_obj(agg))


def read_obj(text: str) -> tuple[dict[str, list[int]], np.ndarray, list[list[int]]]:
    """Minimal reader for the v/f/o records written above.

    Returns (object name -> face indices into the face list, vertices, faces),
    with faces as 1-based vertex indices.
    """
    groups: dict[str, list[int]] = {}
    verts, faces = [], []
    current = None
    for lineno, line in enumerate(text.splitlines(), 1):
        parts = line.split()
        if not parts or parts[0].startswith("#"):
            continue
        tag = parts[0]
        if tag == "o":
            current = parts[1]
            groups[current] = []
        elif tag == "v":
            verts.append([float(p) for p in parts[1:4]])
        elif tag == "f":
            faces.append([int(p.split("/")[0]) for p in parts[1:]])
            if current is not None:
                groups[current].append(len(faces) - 1)
        else:
            raise ParseError(f"line {lineno}: unsupported OBJ record {tag!r}")
    return groups, np.array(verts), faces


# -- SVG -------------------------------------------------------------------------


def junction_svg(j: FaceJunction) -> str:
    """Two projected triangles with centroid markers and an angle/offset label."""
    lower, upper = junction_projection(j)
    scale = SVG_UNITS_PER_EDGE / j.edge_length
    lower = lower * scale
    upper = upper * scale
    pts = np.vstack([lower, upper])
    margin = 20.0
    xmin, ymin = pts.min(axis=0) - margin
    xmax, ymax = pts.max(axis=0) + margin
    width, height = xmax - xmin, ymax - ymin + 30

    def xy(p):
        # SVG y grows downwards; flip so +y is up
        return f"{p[0] - xmin:.3f},{ymax - p[1]:.3f}"

    def polygon(tri, colour):
        return (
            f'  <polygon points="{" ".join(xy(p) for p in tri)}" '
            f'fill="{colour}" fill-opacity="0.25" stroke="{colour}" stroke-width="1.5"/>'
        )

    def marker(tri, colour):
        cx, cy = xy(tri.mean(axis=0)).split(",")
        return f'  <circle cx="{cx}" cy="{cy}" r="2.5" fill="{colour}"/>'

    label = (
        f"angle_min = {math.degrees(j.angle_min):.4f} deg, "
        f"offset = {j.offset_in_delta:.6f} delta"
    )
    body = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{width:.3f}" height="{height:.3f}" viewBox="0 0 {width:.3f} {height:.3f}">',
        f"  <title>junction {j.faces[0].tet_id}:{j.faces[0].face_index} / "
        f"{j.faces[1].tet_id}:{j.faces[1].face_index}</title>",
        polygon(lower, "#1f5fbf"),
        polygon(upper, "#c0392b"),
        marker(lower, "#1f5fbf"),
        marker(upper, "#c0392b"),
        f'  <text x="{margin / 2:.3f}" y="{height - 10:.3f}" font-family="monospace" '
        f'font-size="10">{label}</text>',
        "</svg>",
    ]
    return "\n".join(body) + "\n"
