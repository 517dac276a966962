"""Canonical and modified Boerdijk-Coxeter helices.

Both builders glue each new tetrahedron onto the face opposite the oldest
vertex of the previous one, which is what makes the chain a helix.  The
modified builder then spins the glued tetrahedron by beta about the normal of
the gluing face through its own centroid.
"""

from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass

import numpy as np

from .aggregates import BC_HELIX, MODIFIED_BC_HELIX, Aggregate
from .exceptions import DomainError, StructureError
from .geometry import (
    DEFAULT_TOL,
    RigidMotion,
    ToleranceConfig,
    append_mirror,
    face_plane,
    mirror_relabeling,
    reference_tetrahedron,
    rotation_about_line,
    rotation_matrix,
    screw_decompose,
)
from .golden import beta

HELIX_KINDS = (BC_HELIX, MODIFIED_BC_HELIX)


class Chirality(str, enum.Enum):
    RIGHT = "right"
    LEFT = "left"

    @property
    def sign(self) -> int:
        return 1 if self is Chirality.RIGHT else -1

    def flipped(self) -> "Chirality":
        return Chirality.LEFT if self is Chirality.RIGHT else Chirality.RIGHT


# age order (oldest first) of the reference tetrahedron's labels for each hand
_START_ORDER = {Chirality.RIGHT: (0, 1, 2, 3), Chirality.LEFT: (0, 1, 3, 2)}


@dataclass(frozen=True)
class HelixSpec:
    """Parameters of a helix build.

    ``rotation_sense`` is the hand of the beta spin about the outward normal of
    each gluing face (right = positive); it is ignored unless ``modified``.
    ``angle`` overrides beta for exploratory builds only.
    """

    count: int
    underlying: Chirality = Chirality.RIGHT
    rotation_sense: Chirality = Chirality.RIGHT
    a: float = 1.0
    modified: bool = False
    angle: float | None = None

    def __post_init__(self):
        if isinstance(self.count, bool) or int(self.count) != self.count or self.count < 1:
            raise DomainError(f"helix count must be a positive integer, got {self.count!r}")
        if not (self.a > 0 and math.isfinite(self.a)):
            raise DomainError(f"edge length must be positive, got {self.a!r}")
        object.__setattr__(self, "underlying", Chirality(self.underlying))
        object.__setattr__(self, "rotation_sense", Chirality(self.rotation_sense))

    @property
    def like_chiralities(self) -> bool:
        return self.underlying is self.rotation_sense


def _grow(spec: HelixSpec) -> Aggregate:
    t = reference_tetrahedron(spec.a)
    ages = list(_START_ORDER[spec.underlying])
    turn = float(beta()) if spec.angle is None else float(spec.angle)
    tets = [t]
    for k in range(1, spec.count):
        oldest = ages[0]
        normal = face_plane(t, oldest).normal
        glued = append_mirror(t, oldest, k)
        # labels after the mirror: old label l now sits where mirror put it
        where = {old: new for new, old in enumerate(mirror_relabeling(oldest))}
        ages = [where[label] for label in ages[1:]] + [oldest]
        if spec.modified:
            spin = rotation_about_line(glued.centroid, normal, spec.rotation_sense.sign * turn)
            glued = glued.transformed(spin)
        tets.append(glued)
        t = glued
    params = {
        "count": spec.count,
        "a": spec.a,
        "underlying": spec.underlying.value,
        "modified": spec.modified,
    }
    if spec.modified:
        params["rotation_sense"] = spec.rotation_sense.value
        params["rotation_angle"] = turn
    kind = MODIFIED_BC_HELIX if spec.modified else BC_HELIX
    return Aggregate(kind, spec.a, tets, params)


def build_bc_helix(spec: HelixSpec) -> Aggregate:
    """Canonical (aperiodic) Boerdijk-Coxeter helix of ``spec.count`` tetrahedra."""
    if spec.modified:
        raise DomainError("build_bc_helix needs a spec with modified=False")
    return _grow(spec)


def build_modified_helix(spec: HelixSpec) -> Aggregate:
    """Modified helix: every glued tetrahedron is spun by beta about the gluing-face normal.

    Like chiralities give period 5, unlike give period 3.
    """
    if not spec.modified:
        raise DomainError("build_modified_helix needs a spec with modified=True")
    return _grow(spec)


def build_helix(spec: HelixSpec) -> Aggregate:
    return build_modified_helix(spec) if spec.modified else build_bc_helix(spec)


def _require_helix(agg: Aggregate):
    if agg.kind not in HELIX_KINDS:
        raise DomainError(f"expected a helix aggregate, got {agg.kind}")


def _same_vertex_set(p: np.ndarray, q: np.ndarray, tol: float) -> bool:
    d = np.linalg.norm(p[:, None, :] - q[None, :, :], axis=2)
    return bool(d.min(axis=1).max() < tol and d.min(axis=0).max() < tol)


def step_motion(agg: Aggregate, tol: ToleranceConfig = DEFAULT_TOL) -> RigidMotion:
    """The single proper motion carrying every tetrahedron onto the next one.

    Vertex labels are ignored: among the rotations taking T0's vertex set to T1's,
    the one that also carries each T_k onto T_{k+1} is returned.

    Raises
    ------
    StructureError
        If the aggregate has fewer than two tetrahedra or no common motion exists.
    """
    tets = agg.tetrahedra
    if len(tets) < 2:
        raise StructureError("need at least two tetrahedra to define a step")
    ptol = tol.point_tol * agg.edge_length
    src = tets[0].vertices
    for perm in itertools.permutations(range(4)):
        motion, residual = RigidMotion.fit(src, tets[1].vertices[list(perm)])
        if residual > ptol or not motion.is_proper(1e-9):
            continue
        if all(
            _same_vertex_set(motion.apply(tets[k].vertices), tets[k + 1].vertices, ptol)
            for k in range(1, len(tets) - 1)
        ):
            return motion
    raise StructureError("consecutive tetrahedra are not related by one common screw motion")


def detect_period(agg: Aggregate, max_m: int = 10, tol: ToleranceConfig = DEFAULT_TOL) -> int | None:
    """Smallest m <= max_m such that T_{k+m} is T_k shifted by one fixed vector.

    Returns None when no such m exists.  Requires more than ``max_m`` tetrahedra.
    """
    _require_helix(agg)
    if max_m < 1:
        raise DomainError("max_m must be at least 1")
    tets = agg.tetrahedra
    if len(tets) <= max_m:
        raise DomainError(f"need more than {max_m} tetrahedra to test periods up to {max_m}")
    ptol = tol.point_tol * agg.edge_length
    for m in range(1, max_m + 1):
        shift = tets[m].centroid - tets[0].centroid
        if all(
            _same_vertex_set(tets[k].vertices + shift, tets[k + m].vertices, ptol)
            for k in range(len(tets) - m)
        ):
            return m
    return None


def period_translation(agg: Aggregate, m: int) -> np.ndarray:
    return agg.tetrahedra[m].centroid - agg.tetrahedra[0].centroid


def _unique_points(points: np.ndarray, tol: float) -> np.ndarray:
    kept = []
    for p in points:
        if not kept or np.linalg.norm(np.asarray(kept) - p, axis=1).min() >= tol:
            kept.append(p)
    return np.asarray(kept)


def projected_symmetry_order(
    agg: Aggregate, tol: ToleranceConfig = DEFAULT_TOL, max_order: int = 12
) -> int:
    """Largest s such that the vertices, projected along the screw axis, are
    invariant under a 1/s turn about the axis.

    Coincident projected points are merged before the test, so the answer does
    not depend on how many whole periods the helix contains.
    """
    _require_helix(agg)
    screw = screw_decompose(step_motion(agg, tol), tol)
    if screw.is_pure_translation:
        raise StructureError("helix step is a pure translation; no axis to project along")
    ptol = tol.point_tol * agg.edge_length
    pts = np.vstack([t.vertices for t in agg.tetrahedra]) - screw.axis_point
    pts = pts - np.outer(pts @ screw.axis_dir, screw.axis_dir)
    pts = _unique_points(pts, ptol)
    for s in range(max_order, 1, -1):
        turned = pts @ rotation_matrix(screw.axis_dir, 2 * math.pi / s).T
        d = np.linalg.norm(turned[:, None, :] - pts[None, :, :], axis=2)
        if d.min(axis=1).max() < ptol:
            return s
    return 1
