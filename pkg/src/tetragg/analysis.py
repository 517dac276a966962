"""Plane classes, face junctions and the delta offsets between junction projections."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Mapping

import numpy as np

from .aggregates import Aggregate
from .exceptions import DomainError
from .geometry import DEFAULT_TOL, FaceRef, Plane, ToleranceConfig, face_plane, unit
from .golden import beta, phi

THIRD_TURN = 2 * math.pi / 3
MIN_OVERLAP = 1e-6  # in units of a^2; below this a coplanar contact is only an edge touch

FIG8_KINDS = ("icosahedral", "helix", "ring5", "ring3")


def delta(a: float = 1.0) -> float:
    """Unit in-plane displacement a / (2 phi^2 sqrt 6)."""
    if not a > 0:
        raise DomainError(f"edge length must be positive, got {a!r}")
    return a / (2 * phi() ** 2 * math.sqrt(6))


def fig8_expected_offsets() -> dict[str, float]:
    """Signed junction offsets, in units of delta, for the four junction kinds."""
    return {"icosahedral": -2.0, "helix": 0.0, "ring5": 1.0, "ring3": 3 * phi() + 1}


# -- plane classes ---------------------------------------------------------------


@dataclass
class PlaneClass:
    representative: np.ndarray
    members: list[FaceRef] = field(default_factory=list)


@dataclass
class PlaneClassPartition:
    classes: list[PlaneClass]

    @property
    def count(self) -> int:
        return len(self.classes)

    def class_of(self, face: FaceRef) -> int:
        for i, cls in enumerate(self.classes):
            if face in cls.members:
                return i
        raise KeyError(face)


def _canonical(n: np.ndarray) -> np.ndarray:
    # orientation is not part of a class: flip so the first clear component is positive
    for c in n:
        if abs(c) > 1e-6:
            return n if c > 0 else -n
    return n


def plane_classes(agg: Aggregate, tol: ToleranceConfig = DEFAULT_TOL) -> PlaneClassPartition:
    """Group all faces by parallel (or antiparallel) normals.

    Classes are ordered lexicographically by their canonical representative;
    members are listed in (tet_id, face_index) order.
    """
    classes: list[PlaneClass] = []
    for t in agg.tetrahedra:
        for f in range(4):
            n = face_plane(t, f).normal
            for cls in classes:
                if np.linalg.norm(np.cross(cls.representative, n)) < tol.parallel_tol:
                    cls.members.append(FaceRef(t.id, f))
                    break
            else:
                classes.append(PlaneClass(_canonical(n), [FaceRef(t.id, f)]))
    classes.sort(key=lambda c: tuple(np.round(c.representative, 9)))
    return PlaneClassPartition(classes)


# -- junctions -------------------------------------------------------------------


def _polygon_area(poly: np.ndarray) -> float:
    if len(poly) < 3:
        return 0.0
    x, y = poly[:, 0], poly[:, 1]
    return 0.5 * float(np.dot(x, np.roll(y, -1)) - np.dot(y, np.roll(x, -1)))


def _clip_convex(subject: np.ndarray, clip: np.ndarray) -> np.ndarray:
    """Sutherland-Hodgman clip of ``subject`` by the counter-clockwise convex ``clip``."""
    out = list(subject)
    for i in range(len(clip)):
        if not out:
            break
        p, q = clip[i], clip[(i + 1) % len(clip)]
        edge = q - p
        side = [edge[0] * (v[1] - p[1]) - edge[1] * (v[0] - p[0]) for v in out]
        nxt = []
        for k in range(len(out)):
            cur, prev = out[k], out[k - 1]
            s_cur, s_prev = side[k], side[k - 1]
            if s_cur >= 0:
                if s_prev < 0:
                    nxt.append(prev + (cur - prev) * (s_prev / (s_prev - s_cur)))
                nxt.append(cur)
            elif s_prev >= 0:
                nxt.append(prev + (cur - prev) * (s_prev / (s_prev - s_cur)))
        out = nxt
    return np.asarray(out)


def triangle_overlap_area(tri_a: np.ndarray, tri_b: np.ndarray) -> float:
    """Area shared by two 2D triangles (any winding)."""
    a = tri_a if _polygon_area(tri_a) > 0 else tri_a[::-1]
    b = tri_b if _polygon_area(tri_b) > 0 else tri_b[::-1]
    return abs(_polygon_area(_clip_convex(a, b)))


@dataclass(frozen=True, eq=False)
class FaceJunction:
    """Two coincident faces of distinct tetrahedra.

    ``plane`` carries the outward normal of the lower-id face, so it points
    into the higher-id tetrahedron.  ``lower``/``upper`` are the face triangles.
    """

    faces: tuple[FaceRef, FaceRef]
    plane: Plane
    lower: np.ndarray
    upper: np.ndarray
    angle_raw: float
    angle_min: float
    offset: np.ndarray
    offset_in_delta: float
    signed_offset_in_delta: float
    x_axis: np.ndarray
    overlap_area: float
    residual: float

    @property
    def edge_length(self) -> float:
        return _side_length(self.lower, self.upper)


def _side_length(lower, upper) -> float:
    sides = [np.linalg.norm(tri[i] - tri[i - 1]) for tri in (lower, upper) for i in range(3)]
    return float(np.mean(sides))


def _frame(normal, centre, first):
    e1 = unit(first - centre)
    e1 = unit(e1 - (e1 @ normal) * normal)
    return e1, np.cross(normal, e1)


def _signature(plane: Plane, lower: np.ndarray, upper: np.ndarray):
    n = plane.normal
    a = _side_length(lower, upper)
    c_lo, c_up = lower.mean(axis=0), upper.mean(axis=0)
    e1, e2 = _frame(n, c_lo, lower[0])

    def flat(pts, origin):
        d = np.asarray(pts) - origin
        return np.column_stack([d @ e1, d @ e2])

    area = triangle_overlap_area(flat(lower, c_lo), flat(upper, c_lo))
    if area < MIN_OVERLAP * a * a:
        raise DomainError("faces do not overlap; not a face junction")

    rel = flat(upper, c_up)
    triple = 3 * np.arctan2(rel[:, 1], rel[:, 0])
    raw = (math.atan2(np.sin(triple).sum(), np.cos(triple).sum()) / 3) % THIRD_TURN
    if THIRD_TURN - raw < 1e-15:
        raw = 0.0
    amin = min(raw, THIRD_TURN - raw)

    offset = c_up - c_lo
    offset = offset - (offset @ n) * n
    # reference axes: a quarter turn past the bisector of the nearest vertex pair,
    # taken in the sense of the smaller rotation; three copies by symmetry
    sense = 1.0 if raw <= math.pi / 3 else -1.0
    base = sense * (amin / 2 + math.pi / 2)
    axes = [
        math.cos(base + k * THIRD_TURN) * e1 + math.sin(base + k * THIRD_TURN) * e2 for k in range(3)
    ]
    dots = [float(offset @ ax) for ax in axes]
    k = int(np.argmax(np.abs(dots))) if np.linalg.norm(offset) > 1e-12 * a else 0
    d = delta(a)
    residual = float(np.abs(plane.signed_distance(upper)).max())
    return dict(
        angle_raw=float(raw),
        angle_min=float(amin),
        offset=offset,
        offset_in_delta=float(np.linalg.norm(offset) / d),
        signed_offset_in_delta=dots[k] / d,
        x_axis=axes[k],
        overlap_area=float(area),
        residual=residual,
    )


def make_junction(face_lo: FaceRef, lower: np.ndarray, face_hi: FaceRef, upper: np.ndarray, plane: Plane) -> FaceJunction:
    lower = np.asarray(lower, dtype=float)
    upper = np.asarray(upper, dtype=float)
    return FaceJunction((face_lo, face_hi), plane, lower, upper, **_signature(plane, lower, upper))


def junction_signature(j: FaceJunction) -> tuple[float, float, float]:
    """(angle_raw, angle_min, offset_in_delta) recomputed from the junction's triangles.

    ``angle_raw`` is the counter-clockwise turn about ``j.plane.normal``, in
    [0, 2pi/3), taking the lower face's vertex directions onto the upper's.
    """
    sig = _signature(j.plane, j.lower, j.upper)
    return sig["angle_raw"], sig["angle_min"], sig["offset_in_delta"]


def _face_table(agg: Aggregate):
    refs, normals, offsets, tris = [], [], [], []
    for t in agg.tetrahedra:
        for f in range(4):
            plane = face_plane(t, f)
            refs.append(FaceRef(t.id, f))
            normals.append(plane.normal)
            offsets.append(plane.offset)
            tris.append(t.face_vertices(f))
    return refs, np.array(normals), np.array(offsets), np.array(tris)


def find_face_junctions(agg: Aggregate, tol: ToleranceConfig = DEFAULT_TOL) -> list[FaceJunction]:
    """All face junctions of ``agg``, sorted by their face pairs.

    Two faces form a junction when they belong to different tetrahedra, their
    outward normals are antiparallel, they are coplanar within ``tol.point_tol``
    and their triangles overlap by at least 1e-6 a^2.
    """
    a = agg.edge_length
    ptol = tol.point_tol * a
    refs, normals, offsets, tris = _face_table(agg)
    cross = np.linalg.norm(np.cross(normals[:, None, :], normals[None, :, :]), axis=2)
    dots = normals @ normals.T
    same_plane = np.abs(offsets[:, None] + offsets[None, :]) < ptol
    tet = np.array([r.tet_id for r in refs])
    cand = (cross < tol.parallel_tol) & (dots < 0) & same_plane & (tet[:, None] < tet[None, :])
    out = []
    for i, j in zip(*np.nonzero(cand)):
        plane = Plane(normals[i], offsets[i])
        if np.abs(plane.signed_distance(tris[j])).max() >= ptol:
            continue
        try:
            out.append(make_junction(refs[i], tris[i], refs[j], tris[j], plane))
        except DomainError:
            continue
    out.sort(key=lambda jn: jn.faces)
    return out


def junction_projection(j: FaceJunction) -> tuple[np.ndarray, np.ndarray]:
    """Both triangles in the junction plane, as (3, 2) arrays.

    Origin at the lower triangle's centroid; x along the signed offset axis
    (so the offset lies on the x-axis for the delta-family junctions); y completes a
    right-handed frame with the plane normal.
    """
    origin = j.lower.mean(axis=0)
    x = j.x_axis
    y = np.cross(j.plane.normal, x)

    def flat(tri):
        d = tri - origin
        return np.column_stack([d @ x, d @ y])

    return flat(j.lower), flat(j.upper)


# -- delta offset family -----------------------------------------------------------


@dataclass
class Fig8Row:
    kind: str
    offset_in_delta: float
    signed_offset_in_delta: float
    angle_min: float
    expected_signed: float
    ok: bool


@dataclass
class Fig8Report:
    rows: list[Fig8Row]
    diagnostics: list[str]

    @property
    def passed(self) -> bool:
        return all(r.ok for r in self.rows) and not self.diagnostics


def verify_fig8_family(
    junctions: Mapping[str, FaceJunction], offset_tol: float = 1e-6, angle_tol: float = 1e-9
) -> Fig8Report:
    """Check that the helix, icosahedral, 5-ring and 3-ring junctions differ by
    the expected multiples of delta and all share the minimal angle beta.

    ``junctions`` maps each of ``"helix"``, ``"icosahedral"``, ``"ring5"`` and
    ``"ring3"`` to one junction of that kind.
    """
    missing = [k for k in FIG8_KINDS if k not in junctions]
    if missing:
        raise DomainError(f"missing junction kinds: {', '.join(missing)}")
    target = float(beta())
    rows, notes = [], []
    for kind, expected in fig8_expected_offsets().items():
        j = junctions[kind]
        ok_offset = abs(j.signed_offset_in_delta - expected) < offset_tol
        ok_unsigned = abs(j.offset_in_delta - abs(expected)) < offset_tol
        ok_angle = abs(j.angle_min - target) < angle_tol
        if not ok_offset or not ok_unsigned:
            notes.append(
                f"{kind}: offset {j.signed_offset_in_delta:+.9f} delta, expected {expected:+.9f}"
            )
        if not ok_angle:
            notes.append(f"{kind}: angle_min {j.angle_min:.12f}, expected beta = {target:.12f}")
        rows.append(
            Fig8Row(kind, j.offset_in_delta, j.signed_offset_in_delta, j.angle_min, expected,
                    ok_offset and ok_unsigned and ok_angle)
        )
    return Fig8Report(rows, notes)
