"""Edge rings and the icosahedral vertex aggregate, with their gap-closing twists."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from .exceptions import DomainError, InvariantError, StateError
from .geometry import (
    RigidMotion,
    Tetrahedron,
    intersection_volume,
    rotation_about_line,
    rotation_matrix,
    unit,
)
from .golden import MAX_RING, MIN_RING, alpha_edge_ring, alpha_icosahedral, phi

EDGE_RING = "edge_ring"
ICOSAHEDRAL = "icosahedral"
BC_HELIX = "bc_helix"
MODIFIED_BC_HELIX = "modified_bc_helix"
KINDS = (EDGE_RING, ICOSAHEDRAL, BC_HELIX, MODIFIED_BC_HELIX)

OVERLAP_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class Aggregate:
    """Ordered tetrahedra plus the parameters they were built from.

    ``parameters`` only holds JSON-friendly values (numbers, strings, bools).
    """

    kind: str
    edge_length: float
    tetrahedra: tuple[Tetrahedron, ...]
    parameters: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise DomainError(f"unknown aggregate kind {self.kind!r}")
        tets = tuple(self.tetrahedra)
        object.__setattr__(self, "tetrahedra", tets)
        object.__setattr__(self, "edge_length", float(self.edge_length))
        object.__setattr__(self, "parameters", dict(self.parameters))
        ids = [t.id for t in tets]
        if ids != list(range(len(tets))):
            raise InvariantError(f"tetrahedron ids must be 0..{len(tets) - 1} in order, got {ids}")
        for t in tets:
            if not math.isclose(t.edge_length, self.edge_length, rel_tol=1e-12):
                raise InvariantError(
                    f"tetrahedron {t.id} has edge {t.edge_length}, aggregate has {self.edge_length}"
                )

    def __len__(self):
        return len(self.tetrahedra)

    def __iter__(self):
        return iter(self.tetrahedra)

    def __getitem__(self, i):
        return self.tetrahedra[i]

    @property
    def twisted(self) -> bool:
        return bool(self.parameters.get("twisted", False))

    def replace(self, tetrahedra=None, **params) -> "Aggregate":
        merged = dict(self.parameters)
        merged.update(params)
        return Aggregate(
            self.kind,
            self.edge_length,
            self.tetrahedra if tetrahedra is None else tuple(tetrahedra),
            merged,
        )

    def transformed(self, motion: RigidMotion) -> "Aggregate":
        return self.replace([t.transformed(motion) for t in self.tetrahedra])

    def scaled(self, factor: float) -> "Aggregate":
        if not factor > 0:
            raise DomainError("scale factor must be positive")
        params = dict(self.parameters)
        if "a" in params:
            params["a"] = params["a"] * factor
        return Aggregate(
            self.kind, self.edge_length * factor, [t.scaled(factor) for t in self.tetrahedra], params
        )

    def max_overlap_volume(self) -> float:
        worst = 0.0
        for t1, t2 in itertools.combinations(self.tetrahedra, 2):
            worst = max(worst, intersection_volume(t1, t2))
        return worst

    def validate(self, check_overlap: bool = True) -> "Aggregate":
        """Raise :class:`InvariantError` on irregular or interpenetrating tetrahedra."""
        for t in self.tetrahedra:
            t.validate()
        if check_overlap:
            vol = self.max_overlap_volume()
            if not vol < OVERLAP_TOL * self.edge_length**3:
                raise InvariantError(f"tetrahedra interpenetrate (volume {vol:.3g})")
        return self

    def expected_junction_pairs(self) -> list[tuple[int, int]]:
        """Tetrahedron pairs that should meet in a face junction once transformed."""
        count = len(self.tetrahedra)
        if self.kind == EDGE_RING:
            return sorted(tuple(sorted((k, (k + 1) % count))) for k in range(count))
        if self.kind == ICOSAHEDRAL:
            return icosahedral_adjacency()
        return [(k, k + 1) for k in range(count - 1)]


def _check_edge(a):
    if not (a > 0 and math.isfinite(a)):
        raise DomainError(f"edge length must be positive and finite, got {a!r}")


def _check_sense(sense):
    if sense not in (1, -1):
        raise DomainError(f"twist sense must be +1 or -1, got {sense!r}")


def build_edge_ring(n: int, a: float = 1.0) -> Aggregate:
    """``n`` tetrahedra around a common edge on the z-axis, centres at azimuths 2 pi k / n.

    Vertices 0 and 1 of every tetrahedron are the shared edge endpoints
    (0, 0, +-a/2); vertices 2 and 3 span its peripheral edge.
    """
    if isinstance(n, bool) or int(n) != n or not MIN_RING <= n <= MAX_RING:
        raise DomainError(f"edge-ring size must be an integer in [{MIN_RING}, {MAX_RING}], got {n!r}")
    _check_edge(a)
    n = int(n)
    top = np.array([0.0, 0.0, a / 2])
    tets = []
    for k in range(n):
        azimuth = 2 * math.pi * k / n
        radial = np.array([math.cos(azimuth), math.sin(azimuth), 0.0])
        tangent = np.array([-math.sin(azimuth), math.cos(azimuth), 0.0])
        mid = radial * (a / math.sqrt(2))
        verts = [top, -top, mid + tangent * (a / 2), mid - tangent * (a / 2)]
        tets.append(Tetrahedron(k, verts, a))
    return Aggregate(EDGE_RING, a, tets, {"n": n, "a": a, "twisted": False})


def twist_edge_ring(agg: Aggregate, *, sense: int = 1, angle: float | None = None) -> Aggregate:
    """Rotate each ring member about the axis joining the midpoints of its central
    and peripheral edges.

    Parameters
    ----------
    sense : {+1, -1}
        +1 turns every tetrahedron right-handedly about its outward radial axis;
        -1 gives the mirror-image aggregate.
    angle : float, optional
        Override for exploratory sweeps.  Only the default ``alpha_edge_ring(n)``
        closes the gaps.

    Raises
    ------
    StateError
        If ``agg`` is not an untwisted edge ring.
    """
    if agg.kind != EDGE_RING:
        raise StateError(f"expected an edge ring, got {agg.kind}")
    if agg.twisted:
        raise StateError("edge ring is already twisted")
    _check_sense(sense)
    n = len(agg)
    turn = float(alpha_edge_ring(n)) if angle is None else float(angle)
    out = []
    for t in agg.tetrahedra:
        v = t.vertices
        centre = (v[0] + v[1]) / 2
        axis = unit((v[2] + v[3]) / 2 - centre)
        out.append(t.transformed(rotation_about_line(centre, axis, sense * turn)))
    return agg.replace(out, twisted=True, sense=sense, twist_angle=turn)


def icosahedron() -> tuple[np.ndarray, list[tuple[int, int, int]]]:
    """Unit-circumradius icosahedron: 12 vertices and 20 faces wound outward."""
    p = phi()
    verts = []
    for s1, s2 in itertools.product((1, -1), repeat=2):
        verts += [(0, s1, s2 * p), (s1, s2 * p, 0), (s2 * p, 0, s1)]
    verts = np.array(verts, dtype=float)
    verts /= np.linalg.norm(verts, axis=1)[:, None]
    edge = min(np.linalg.norm(verts[0] - verts[j]) for j in range(1, 12))
    faces = []
    for tri in itertools.combinations(range(12), 3):
        if all(
            abs(np.linalg.norm(verts[i] - verts[j]) - edge) < 1e-9
            for i, j in itertools.combinations(tri, 2)
        ):
            i, j, k = tri
            if np.cross(verts[j] - verts[i], verts[k] - verts[i]) @ verts[i] < 0:
                tri = (i, k, j)
            faces.append(tri)
    return verts, faces


def icosahedral_adjacency() -> list[tuple[int, int]]:
    """The 30 pairs of icosahedron faces that share an edge."""
    _, faces = icosahedron()
    pairs = []
    for i, j in itertools.combinations(range(len(faces)), 2):
        if len(set(faces[i]) & set(faces[j])) == 2:
            pairs.append((i, j))
    return pairs


def build_icosahedral(a: float = 1.0) -> Aggregate:
    """Twenty tetrahedra sharing vertex 0 at the origin, one per icosahedron face.

    Each exterior face (face 0) is perpendicular to its face-centre direction
    at distance a*sqrt(2/3), with its vertices pointing at the icosahedron's.
    """
    _check_edge(a)
    verts, faces = icosahedron()
    height = a * math.sqrt(2 / 3)
    radius = a / math.sqrt(3)
    tets = []
    for k, face in enumerate(faces):
        centre_dir = unit(verts[list(face)].sum(axis=0))
        pts = [np.zeros(3)]
        for i in face:
            w = unit(verts[i] - (verts[i] @ centre_dir) * centre_dir)
            pts.append(height * centre_dir + radius * w)
        t = Tetrahedron(k, pts, a)
        if t.signed_volume < 0:
            t = t.relabeled([0, 1, 3, 2])
        tets.append(t)
    return Aggregate(ICOSAHEDRAL, a, tets, {"a": a, "twisted": False})


def twist_icosahedral(agg: Aggregate, *, sense: int = 1, angle: float | None = None) -> Aggregate:
    """Rotate each tetrahedron about the line from the central vertex through the
    centre of its exterior face.

    ``sense`` and ``angle`` behave as in :func:`twist_edge_ring`.
    """
    if agg.kind != ICOSAHEDRAL:
        raise StateError(f"expected an icosahedral aggregate, got {agg.kind}")
    if agg.twisted:
        raise StateError("icosahedral aggregate is already twisted")
    _check_sense(sense)
    turn = float(alpha_icosahedral()) if angle is None else float(angle)
    out = []
    for t in agg.tetrahedra:
        axis = unit(t.vertices[1:].mean(axis=0) - t.vertices[0])
        out.append(t.transformed(rotation_about_line(t.vertices[0], axis, sense * turn)))
    return agg.replace(out, twisted=True, sense=sense, twist_angle=turn)


def icosahedral_rotations() -> list[np.ndarray]:
    """The 60 rotation matrices of the icosahedral group (for the reference icosahedron)."""
    verts, faces = icosahedron()
    # closure of two generators: 5-fold about a vertex, 3-fold about a face centre
    gens = [
        rotation_matrix(verts[0], 2 * math.pi / 5),
        rotation_matrix(verts[list(faces[0])].sum(axis=0), 2 * math.pi / 3),
    ]
    group = [np.eye(3)]
    frontier = [np.eye(3)]
    while frontier:
        nxt = []
        for g in frontier:
            for h in gens:
                cand = h @ g
                if not any(np.abs(cand - e).max() < 1e-9 for e in group):
                    group.append(cand)
                    nxt.append(cand)
        frontier = nxt
    return group
