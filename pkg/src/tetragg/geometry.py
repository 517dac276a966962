"""Tolerance-aware 3D primitives for regular tetrahedra.

Points are plain ``numpy`` arrays of shape ``(3,)``; collections of points are
``(N, 3)`` arrays.  Motions, planes and tetrahedra are immutable values.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.spatial import ConvexHull, QhullError

from .exceptions import DomainError, InvariantError

REGULARITY_TOL = 1e-9


@dataclass(frozen=True)
class ToleranceConfig:
    """Comparison tolerances.

    ``point_tol`` is expressed in units of the edge length; callers multiply by
    ``a`` before comparing distances.  ``parallel_tol`` bounds the norm of the
    cross product of two unit normals.
    """

    point_tol: float = 1e-9
    angle_tol: float = 1e-9
    parallel_tol: float = 1e-9

    def __post_init__(self):
        for name in ("point_tol", "angle_tol", "parallel_tol"):
            value = getattr(self, name)
            if not (value > 0 and math.isfinite(value)):
                raise DomainError(f"{name} must be strictly positive, got {value!r}")

    def scaled(self, factor: float) -> "ToleranceConfig":
        return ToleranceConfig(
            self.point_tol * factor, self.angle_tol * factor, self.parallel_tol * factor
        )


DEFAULT_TOL = ToleranceConfig()


def unit(v) -> np.ndarray:
    v = np.asarray(v, dtype=float)
    norm = np.linalg.norm(v)
    if norm == 0 or not math.isfinite(norm):
        raise DomainError("cannot normalise a zero or non-finite vector")
    return v / norm


def _skew(w: np.ndarray) -> np.ndarray:
    return np.array([[0.0, -w[2], w[1]], [w[2], 0.0, -w[0]], [-w[1], w[0], 0.0]])


def rotation_matrix(axis, angle: float) -> np.ndarray:
    """Right-handed rotation by ``angle`` about the unit direction ``axis``."""
    k = _skew(unit(axis))
    return np.eye(3) + math.sin(angle) * k + (1 - math.cos(angle)) * (k @ k)


@dataclass(frozen=True, eq=False)
class RigidMotion:
    """x -> rotation @ x + translation."""

    rotation: np.ndarray = field(default_factory=lambda: np.eye(3))
    translation: np.ndarray = field(default_factory=lambda: np.zeros(3))

    def __post_init__(self):
        rot = np.array(self.rotation, dtype=float).reshape(3, 3)
        tr = np.array(self.translation, dtype=float).reshape(3)
        rot.setflags(write=False)
        tr.setflags(write=False)
        object.__setattr__(self, "rotation", rot)
        object.__setattr__(self, "translation", tr)

    @classmethod
    def identity(cls) -> "RigidMotion":
        return cls()

    @classmethod
    def from_translation(cls, vector) -> "RigidMotion":
        return cls(np.eye(3), vector)

    def apply(self, points) -> np.ndarray:
        pts = np.asarray(points, dtype=float)
        return pts @ self.rotation.T + self.translation

    __call__ = apply

    def __matmul__(self, other: "RigidMotion") -> "RigidMotion":
        """``(self @ other)(x) == self(other(x))``."""
        return RigidMotion(
            self.rotation @ other.rotation,
            self.rotation @ other.translation + self.translation,
        )

    def inverse(self) -> "RigidMotion":
        rt = self.rotation.T
        return RigidMotion(rt, -rt @ self.translation)

    def power(self, m: int) -> "RigidMotion":
        result = RigidMotion.identity()
        base = self if m >= 0 else self.inverse()
        for _ in range(abs(m)):
            result = base @ result
        return result

    def is_proper(self, tol: float = 1e-12) -> bool:
        r = self.rotation
        return bool(
            np.abs(r.T @ r - np.eye(3)).max() < tol and abs(np.linalg.det(r) - 1) < tol
        )

    def distance(self, other: "RigidMotion") -> float:
        """Max-abs difference of the two 3x4 matrices."""
        return float(
            max(
                np.abs(self.rotation - other.rotation).max(),
                np.abs(self.translation - other.translation).max(),
            )
        )

    @classmethod
    def fit(cls, source, target) -> tuple["RigidMotion", float]:
        """Least-squares proper motion taking ``source`` rows onto ``target`` rows.

        Returns the motion and the max point residual.
        """
        src = np.asarray(source, dtype=float)
        dst = np.asarray(target, dtype=float)
        cs, cd = src.mean(axis=0), dst.mean(axis=0)
        u, _, vt = np.linalg.svd((src - cs).T @ (dst - cd))
        d = np.sign(np.linalg.det(vt.T @ u.T)) or 1.0
        rot = vt.T @ np.diag([1.0, 1.0, d]) @ u.T
        motion = cls(rot, cd - rot @ cs)
        residual = float(np.linalg.norm(motion.apply(src) - dst, axis=1).max())
        return motion, residual


def rotation_about_line(point_on_axis, axis, angle: float) -> RigidMotion:
    """Rotation by ``angle`` (right-handed about ``axis``) fixing the given line.

    Raises
    ------
    DomainError
        If ``axis`` has zero norm.
    """
    rot = rotation_matrix(axis, angle)
    p = np.asarray(point_on_axis, dtype=float)
    return RigidMotion(rot, p - rot @ p)


def reflect_points(points, plane: "Plane") -> np.ndarray:
    pts = np.asarray(points, dtype=float)
    dist = pts @ plane.normal - plane.offset
    return pts - 2 * np.multiply.outer(dist, plane.normal)


@dataclass(frozen=True)
class Screw:
    """Screw form of a rigid motion.

    For a pure translation ``angle`` is 0, ``axis_dir`` is the translation
    direction and ``pitch`` its length; check ``is_pure_translation``.
    """

    axis_point: np.ndarray
    axis_dir: np.ndarray
    angle: float
    pitch: float

    @property
    def is_pure_translation(self) -> bool:
        return self.angle == 0.0

    @property
    def handedness(self) -> int:
        """+1 for a right-handed screw, -1 for left-handed, 0 if degenerate."""
        if self.is_pure_translation or self.pitch == 0:
            return 0
        return 1 if self.pitch > 0 else -1

    def to_motion(self) -> RigidMotion:
        rot = rotation_about_line(self.axis_point, self.axis_dir, self.angle)
        return RigidMotion.from_translation(self.pitch * self.axis_dir) @ rot


def screw_decompose(m: RigidMotion, tol: ToleranceConfig = DEFAULT_TOL) -> Screw:
    """Decompose a proper rigid motion into rotation about an axis plus axial slide.

    The angle is returned in (0, pi].  The axis point is the point of the axis
    closest to the origin.  When the rotation angle is below ``tol.angle_tol``
    the motion is reported as a pure translation (see :class:`Screw`).
    """
    rot, t = m.rotation, m.translation
    # sin from the skew part and cos from the trace keep small angles accurate
    skew = np.array([rot[2, 1] - rot[1, 2], rot[0, 2] - rot[2, 0], rot[1, 0] - rot[0, 1]]) / 2
    angle = math.atan2(float(np.linalg.norm(skew)), (np.trace(rot) - 1) / 2)
    if angle < tol.angle_tol:
        length = float(np.linalg.norm(t))
        direction = t / length if length > 0 else np.array([0.0, 0.0, 1.0])
        return Screw(np.zeros(3), direction, 0.0, length)

    if angle < math.pi / 2:
        axis = skew / np.linalg.norm(skew)
    else:
        # near a half turn the skew part vanishes; use the null vector of (R - I)
        _, _, vt = np.linalg.svd(rot - np.eye(3))
        axis = vt[-1]
        if np.abs(rotation_matrix(axis, angle) - rot).max() > np.abs(
            rotation_matrix(-axis, angle) - rot
        ).max():
            axis = -axis
    pitch = float(axis @ t)
    if math.pi - angle < tol.angle_tol and pitch < 0:
        # half turn: both axis senses describe the rotation
        axis, pitch = -axis, -pitch
    # closest axis point to the origin, solved in closed form for rotation about axis
    t_perp = t - pitch * axis
    point = (t_perp + np.cross(axis, t_perp) / math.tan(angle / 2)) / 2
    return Screw(point, axis, angle, pitch)


@dataclass(frozen=True, eq=False)
class Plane:
    normal: np.ndarray
    offset: float

    def __post_init__(self):
        n = np.array(self.normal, dtype=float)
        if abs(np.linalg.norm(n) - 1) > 1e-12:
            n = unit(n)
        n.setflags(write=False)
        object.__setattr__(self, "normal", n)
        object.__setattr__(self, "offset", float(self.offset))

    @classmethod
    def through(cls, point, normal) -> "Plane":
        n = unit(normal)
        return cls(n, float(n @ np.asarray(point, dtype=float)))

    def signed_distance(self, points) -> np.ndarray:
        return np.asarray(points, dtype=float) @ self.normal - self.offset

    def contains(self, point, tol: float) -> bool:
        return bool(abs(self.signed_distance(point)) < tol)

    def flipped(self) -> "Plane":
        return Plane(-self.normal, -self.offset)


@dataclass(frozen=True, order=True)
class FaceRef:
    """Face ``face_index`` of tetrahedron ``tet_id``; face i is opposite vertex i."""

    tet_id: int
    face_index: int

    def __post_init__(self):
        if self.face_index not in (0, 1, 2, 3):
            raise DomainError(f"face_index must be 0..3, got {self.face_index!r}")


def _signed_volume(v: np.ndarray) -> float:
    return float(np.linalg.det(np.array([v[1] - v[0], v[2] - v[0], v[3] - v[0]])) / 6)


@dataclass(frozen=True, eq=False)
class Tetrahedron:
    id: int
    vertices: np.ndarray
    edge_length: float

    def __post_init__(self):
        verts = np.array(self.vertices, dtype=float)
        if verts.shape != (4, 3):
            raise InvariantError(f"a tetrahedron needs 4x3 vertices, got {verts.shape}")
        verts.setflags(write=False)
        object.__setattr__(self, "vertices", verts)
        object.__setattr__(self, "edge_length", float(self.edge_length))
        object.__setattr__(self, "id", int(self.id))

    @property
    def centroid(self) -> np.ndarray:
        return self.vertices.mean(axis=0)

    @property
    def signed_volume(self) -> float:
        return _signed_volume(self.vertices)

    def edge_lengths(self) -> np.ndarray:
        v = self.vertices
        return np.array([np.linalg.norm(v[i] - v[j]) for i, j in itertools.combinations(range(4), 2)])

    def regularity_error(self) -> float:
        """Worst relative deviation from regularity and positive orientation."""
        a = self.edge_length
        edge_err = np.abs(self.edge_lengths() - a).max() / a
        vol_err = abs(self.signed_volume - a**3 / (6 * math.sqrt(2))) / a**3
        return float(max(edge_err, vol_err))

    def is_regular(self, tol: float = REGULARITY_TOL) -> bool:
        return self.regularity_error() < tol

    def validate(self, tol: float = REGULARITY_TOL) -> "Tetrahedron":
        if not self.edge_length > 0:
            raise InvariantError(f"edge length must be positive, got {self.edge_length}")
        err = self.regularity_error()
        if not err < tol:
            raise InvariantError(
                f"tetrahedron {self.id} is not a positively oriented regular tetrahedron "
                f"(relative error {err:.3g})"
            )
        return self

    def face_vertices(self, f: int) -> np.ndarray:
        """The three vertices of face ``f``, wound counter-clockwise seen from outside."""
        idx = [i for i in range(4) if i != f]
        tri = self.vertices[idx]
        n = np.cross(tri[1] - tri[0], tri[2] - tri[0])
        if n @ (self.vertices[f] - tri[0]) > 0:
            tri = tri[[0, 2, 1]]
        return tri

    def face_labels(self, f: int) -> list[int]:
        idx = [i for i in range(4) if i != f]
        tri = self.vertices[idx]
        n = np.cross(tri[1] - tri[0], tri[2] - tri[0])
        if n @ (self.vertices[f] - tri[0]) > 0:
            idx = [idx[0], idx[2], idx[1]]
        return idx

    def transformed(self, motion: RigidMotion, new_id: int | None = None) -> "Tetrahedron":
        return Tetrahedron(self.id if new_id is None else new_id, motion.apply(self.vertices), self.edge_length)

    def relabeled(self, order) -> "Tetrahedron":
        """Tetrahedron whose vertex ``i`` is this one's vertex ``order[i]``."""
        return Tetrahedron(self.id, self.vertices[list(order)], self.edge_length)

    def with_id(self, new_id: int) -> "Tetrahedron":
        return Tetrahedron(new_id, self.vertices, self.edge_length)

    def scaled(self, factor: float) -> "Tetrahedron":
        return Tetrahedron(self.id, self.vertices * factor, self.edge_length * factor)

    def mirrored(self, plane: Plane) -> "Tetrahedron":
        """Mirror image; vertices 2 and 3 are swapped to keep the orientation positive."""
        pts = reflect_points(self.vertices, plane)
        return Tetrahedron(self.id, pts[[0, 1, 3, 2]], self.edge_length)


def reference_tetrahedron(a: float = 1.0, tet_id: int = 0) -> Tetrahedron:
    """Regular tetrahedron of edge ``a``: centroid at the origin, vertex 0 on +z,
    face 0 parallel to the xy-plane below it."""
    if not a > 0:
        raise DomainError(f"edge length must be positive, got {a!r}")
    circum = a * math.sqrt(6) / 4
    ring = a / math.sqrt(3)
    z = -circum / 3
    verts = [(0.0, 0.0, circum)]
    # clockwise seen from +z keeps the orientation positive
    for k in (0, -1, 1):
        ang = 2 * math.pi * k / 3
        verts.append((ring * math.cos(ang), ring * math.sin(ang), z))
    return Tetrahedron(tet_id, np.array(verts), a)


def face_plane(t: Tetrahedron, f: int) -> Plane:
    """Plane of face ``f`` with its normal pointing away from vertex ``f``."""
    if f not in (0, 1, 2, 3):
        raise DomainError(f"face index must be 0..3, got {f!r}")
    tri = t.face_vertices(f)
    n = np.cross(tri[1] - tri[0], tri[2] - tri[0])
    norm = np.linalg.norm(n)
    if not norm > 1e-12 * t.edge_length**2:
        raise InvariantError(f"face {f} of tetrahedron {t.id} is degenerate")
    n = n / norm
    if n @ (t.vertices[f] - tri[0]) >= 0:
        raise InvariantError(f"tetrahedron {t.id} is flat; face {f} has no outward side")
    return Plane(n, float(n @ tri.mean(axis=0)))


def mirror_relabeling(f: int) -> list[int]:
    """Label permutation applied by :func:`append_mirror` across face ``f``.

    Entry ``i`` is the old label that ends up at new label ``i``.  The apex keeps
    label ``f``; the two lowest shared labels trade places so that the face keeps
    its winding as seen from outside its own tetrahedron.
    """
    shared = [i for i in range(4) if i != f]
    order = list(range(4))
    order[shared[0]], order[shared[1]] = shared[1], shared[0]
    return order


def append_mirror(t: Tetrahedron, f: int, new_id: int) -> Tetrahedron:
    """Regular tetrahedron glued face-to-face onto face ``f`` of ``t``.

    The new apex is the mirror image of vertex ``f`` through the face plane and
    takes label ``f``; see :func:`mirror_relabeling` for the shared labels.
    """
    plane = face_plane(t, f)
    verts = np.array(t.vertices)
    verts[f] = reflect_points(verts[f], plane)
    return Tetrahedron(new_id, verts[mirror_relabeling(f)], t.edge_length)


def _halfspaces(t: Tetrahedron) -> tuple[np.ndarray, np.ndarray]:
    planes = [face_plane(t, f) for f in range(4)]
    return np.array([p.normal for p in planes]), np.array([p.offset for p in planes])


_EDGES = list(itertools.combinations(range(4), 2))


def intersection_volume(t1: Tetrahedron, t2: Tetrahedron) -> float:
    """Volume of the intersection of two tetrahedra (0 for contact of measure zero)."""
    a = max(t1.edge_length, t2.edge_length)
    circum = a * math.sqrt(6) / 4
    if np.linalg.norm(t1.centroid - t2.centroid) >= 2 * circum:
        return 0.0
    eps = 1e-12 * a
    n1, d1 = _halfspaces(t1)
    n2, d2 = _halfspaces(t2)

    def inside(pts, normals, offsets):
        return np.all(pts @ normals.T <= offsets + eps, axis=1)

    candidates = [t1.vertices[inside(t1.vertices, n2, d2)], t2.vertices[inside(t2.vertices, n1, d1)]]
    for verts, normals, offsets in ((t1.vertices, n2, d2), (t2.vertices, n1, d1)):
        for i, j in _EDGES:
            p, q = verts[i], verts[j]
            denom = normals @ (q - p)
            with np.errstate(divide="ignore", invalid="ignore"):
                s = (offsets - normals @ p) / denom
            ok = (np.abs(denom) > 1e-15) & (s >= 0) & (s <= 1)
            candidates.append(p + np.outer(s[ok], q - p))
    pts = np.vstack(candidates)
    pts = pts[inside(pts, n1, d1) & inside(pts, n2, d2)]
    if len(pts) < 4:
        return 0.0
    centered = pts - pts.mean(axis=0)
    if np.linalg.matrix_rank(centered, tol=1e-9 * a) < 3:
        return 0.0
    try:
        return float(ConvexHull(pts).volume)
    except QhullError:
        return 0.0
