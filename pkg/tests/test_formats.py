import json
import math
import xml.etree.ElementTree as ET

import numpy as np
import pytest

from tetragg import ParseError, find_face_junctions
from tetragg.formats import (
    aggregate_from_json,
    aggregate_to_json,
    aggregate_to_obj,
    dumps,
    format_number,
    junction_svg,
    read_aggregate,
    read_obj,
    write_aggregate,
)
from tetragg.report import analyze
from tetragg.verify import five_bc

SVG = "{http://www.w3.org/2000/svg}"


@pytest.fixture(scope="module")
def samples(twisted_rings, rings, twisted_ico):
    return [rings[3], twisted_rings[5], twisted_ico, five_bc(7)]


def test_format_number():
    assert format_number(0.1) == "0.10000000000000001"
    assert format_number(2.0) == "2"
    assert format_number(np.int64(7)) == "7"
    with pytest.raises(ValueError):
        format_number(float("nan"))


def test_dumps_matches_json_semantics():
    obj = {"b": [1, 2.5, None], "a": {"x": True, "y": []}, "s": 'q"'}
    assert json.loads(dumps(obj)) == obj
    assert list(json.loads(dumps(obj))) == ["b", "a", "s"]


def test_json_round_trip(samples):
    for agg in samples:
        text = aggregate_to_json(agg)
        back = aggregate_from_json(text)
        assert back.kind == agg.kind and back.parameters == agg.parameters
        for t0, t1 in zip(agg, back):
            assert t0.id == t1.id
            np.testing.assert_array_equal(t0.vertices, t1.vertices)
        assert aggregate_to_json(back) == text


def test_json_bytes_deterministic(samples, tmp_path):
    for i, agg in enumerate(samples):
        p1, p2 = tmp_path / f"{i}a.json", tmp_path / f"{i}b.json"
        write_aggregate(agg, p1)
        write_aggregate(read_aggregate(p1), p2)
        assert p1.read_bytes() == p2.read_bytes()


def test_parse_error_reports_position():
    with pytest.raises(ParseError, match=r"line 3, column"):
        aggregate_from_json('{\n  "kind": "edge_ring",\n  "edge_length": ,\n}')


@pytest.mark.parametrize(
    "mutate, pattern",
    [
        (lambda d: d.pop("kind"), "'kind'"),
        (lambda d: d.update(kind="cube"), "unknown aggregate kind"),
        (lambda d: d.update(edge_length="one"), "'edge_length'"),
        (lambda d: d["tetrahedra"][1].pop("vertices"), r"tetrahedra\[1\]\.vertices"),
        (lambda d: d["tetrahedra"][2]["vertices"].pop(), r"tetrahedra\[2\]\.vertices"),
        (lambda d: d["tetrahedra"][0].update(id="x"), r"tetrahedra\[0\]\.id"),
        (lambda d: d["tetrahedra"][0]["vertices"][0].__setitem__(0, 5.0), r"tetrahedra\[0\]\.vertices.*regular"),
    ],
)
def test_parse_error_names_field(twisted_rings, mutate, pattern):
    data = json.loads(aggregate_to_json(twisted_rings[3]))
    mutate(data)
    with pytest.raises(ParseError, match=pattern):
        aggregate_from_json(json.dumps(data))


def test_obj_export(twisted_rings):
    ring = twisted_rings[5]
    text = aggregate_to_obj(ring)
    lines = text.splitlines()
    assert sum(l.startswith("v ") for l in lines) == 20
    assert sum(l.startswith("f ") for l in lines) == 20
    assert [l for l in lines if l.startswith("o ")] == [f"o tet_{k}" for k in range(5)]
    groups, verts, faces = read_obj(text)
    assert list(groups) == [f"tet_{k}" for k in range(5)]
    for name, idx in groups.items():
        corners = {v for i in idx for v in faces[i]}
        pts = verts[[v - 1 for v in sorted(corners)]]
        d = np.linalg.norm(pts[:, None] - pts[None], axis=2)
        np.testing.assert_allclose(d[np.triu_indices(4, 1)], 1.0, atol=1e-9)
        # outward winding: every face normal points away from the centroid
        c = pts.mean(axis=0)
        for i in idx:
            p = verts[[v - 1 for v in faces[i]]]
            assert np.cross(p[1] - p[0], p[2] - p[0]) @ (p[0] - c) > 0


def test_obj_rejects_unknown_records():
    with pytest.raises(ParseError, match="line 2"):
        read_obj("v 0 0 0\nvt 0 0\n")


def test_junction_svg(twisted_rings):
    j = find_face_junctions(twisted_rings[5])[0]
    root = ET.fromstring(junction_svg(j))
    assert root.tag == SVG + "svg"
    polygons = root.findall(SVG + "polygon")
    assert len(polygons) == 2
    assert {p.get("stroke") for p in polygons} == {"#1f5fbf", "#c0392b"}
    for p in polygons:
        pts = np.array([[float(c) for c in xy.split(",")] for xy in p.get("points").split()])
        sides = np.linalg.norm(pts - np.roll(pts, 1, axis=0), axis=1)
        np.testing.assert_allclose(sides, 100.0, atol=1e-2)
    assert len(root.findall(SVG + "circle")) == 2
    label = root.find(SVG + "text").text
    assert f"{math.degrees(j.angle_min):.4f} deg" in label
    assert "1.000000 delta" in label


def test_analyze_same_in_memory_and_from_disk(samples, tmp_path):
    for i, agg in enumerate(samples):
        path = tmp_path / f"{i}.json"
        write_aggregate(agg, path)
        direct = dumps(analyze(agg, max_m=5).to_dict())
        loaded = dumps(analyze(read_aggregate(path), max_m=5).to_dict())
        assert direct == loaded
