import itertools
import math

import numpy as np
import pytest

from tetragg import (
    DomainError,
    StateError,
    alpha_icosahedral,
    beta,
    beta_edge_ring,
    build_edge_ring,
    build_icosahedral,
    find_face_junctions,
    plane_classes,
    twist_edge_ring,
    twist_icosahedral,
)
from tetragg.aggregates import (
    Aggregate,
    icosahedral_adjacency,
    icosahedral_rotations,
    icosahedron,
)
from tetragg.geometry import Plane, RigidMotion

from oracles import GAP_4_DEG, GAP_5_DEG, adjacent_face_gap_deg

Z = np.array([0.0, 0.0, 1.0])


def _same_tetra_set(tets_a, tets_b, tol=1e-9):
    remaining = [t.vertices for t in tets_b]
    for t in tets_a:
        for k, v in enumerate(remaining):
            d = np.linalg.norm(t.vertices[:, None] - v[None], axis=2)
            if d.min(axis=1).max() < tol:
                remaining.pop(k)
                break
        else:
            return False
    return not remaining


def test_edge_ring_shape(rings):
    for n, ring in rings.items():
        assert len(ring) == n
        assert [t.id for t in ring] == list(range(n))
        ring.validate()
        for k, t in enumerate(ring):
            np.testing.assert_allclose(t.vertices[:2], [[0, 0, 0.5], [0, 0, -0.5]])
            c = t.centroid
            assert math.atan2(c[1], c[0]) % (2 * math.pi) == pytest.approx(2 * math.pi * k / n % (2 * math.pi), abs=1e-12)


@pytest.mark.parametrize("n, gap", [(5, GAP_5_DEG), (4, GAP_4_DEG)])
def test_edge_ring_gap_between_neighbours(rings, n, gap):
    ring = rings[n]
    for k in range(n):
        measured = adjacent_face_gap_deg(ring[k], ring[(k + 1) % n], Z)
        assert measured == pytest.approx(gap, abs=1e-9)
        assert measured == pytest.approx(math.degrees((2 * math.pi - n * math.acos(1 / 3)) / n), abs=1e-9)


def test_edge_ring_untwisted_mirror_symmetry(rings):
    # each member is symmetric under reflection in its own azimuthal half-plane
    for n, ring in rings.items():
        for t in ring:
            c = t.centroid
            normal = np.cross(Z, c / np.linalg.norm(c))
            mirrored = t.mirrored(Plane(normal, 0.0))
            assert _same_tetra_set([mirrored], [t])


@pytest.mark.parametrize("bad", [2, 6])
def test_edge_ring_rejects_size(bad):
    with pytest.raises(DomainError):
        build_edge_ring(bad)


def test_edge_ring_rejects_edge_length():
    with pytest.raises(DomainError):
        build_edge_ring(5, 0.0)


def test_twist_twice_is_a_state_error(twisted_rings, twisted_ico, ico):
    with pytest.raises(StateError):
        twist_edge_ring(twisted_rings[5])
    with pytest.raises(StateError):
        twist_icosahedral(twisted_ico)
    with pytest.raises(StateError):
        twist_edge_ring(ico)


@pytest.mark.parametrize("n", [3, 4, 5])
def test_twisted_ring_junction_angles(twisted_rings, n):
    ring = twisted_rings[n]
    assert ring.twisted
    junctions = find_face_junctions(ring)
    assert sorted((j.faces[0].tet_id, j.faces[1].tet_id) for j in junctions) == ring.expected_junction_pairs()
    for j in junctions:
        assert j.angle_raw == pytest.approx(float(beta_edge_ring(n)) if n != 4 else math.pi / 3, abs=1e-9)


def test_twisted_five_ring_gives_beta(twisted_rings):
    for j in find_face_junctions(twisted_rings[5]):
        assert abs(j.angle_min - beta()) < 1e-9


def test_twisted_three_ring_gives_supplement(twisted_rings):
    for j in find_face_junctions(twisted_rings[3]):
        assert abs(j.angle_raw - (2 * math.pi / 3 - beta())) < 1e-9


@pytest.mark.parametrize("n, before, after", [(5, 20, 10), (4, 8, 4), (3, 12, 9)])
def test_ring_plane_class_counts(rings, twisted_rings, n, before, after):
    assert plane_classes(rings[n]).count == before
    assert plane_classes(twisted_rings[n]).count == after


@pytest.mark.parametrize("n", [3, 4, 5])
def test_twist_is_isometric_and_non_interpenetrating(twisted_rings, n):
    ring = twisted_rings[n]
    for t in ring:
        np.testing.assert_allclose(t.edge_lengths(), ring.edge_length, atol=1e-12)
    assert ring.max_overlap_volume() < 1e-9


@pytest.mark.parametrize("n", [3, 4, 5])
def test_opposite_sense_is_mirror_image(rings, n):
    right = twist_edge_ring(rings[n], sense=1)
    left = twist_edge_ring(rings[n], sense=-1)
    mirror = Plane([0.0, 1.0, 0.0], 0.0)
    assert _same_tetra_set([t.mirrored(mirror) for t in right], left.tetrahedra)
    assert plane_classes(left).count == plane_classes(right).count
    for j in find_face_junctions(left):
        assert abs(j.angle_min - min(beta_edge_ring(n), 2 * math.pi / 3 - beta_edge_ring(n))) < 1e-9


def test_override_angle_does_not_close_gaps(rings):
    ring = twist_edge_ring(rings[5], angle=0.1)
    assert ring.parameters["twist_angle"] == 0.1
    assert find_face_junctions(ring) == []


def test_sense_must_be_unit(rings):
    with pytest.raises(DomainError):
        twist_edge_ring(rings[5], sense=2)


# -- icosahedral -----------------------------------------------------------------


def test_reference_icosahedron():
    verts, faces = icosahedron()
    assert verts.shape == (12, 3) and len(faces) == 20
    assert len(icosahedral_adjacency()) == 30
    assert len(icosahedral_rotations()) == 60


def test_icosahedral_layout(ico):
    verts, faces = icosahedron()
    a = ico.edge_length
    ico.validate()
    centres = []
    for t, face in zip(ico, faces):
        np.testing.assert_allclose(t.vertices[0], 0, atol=1e-15)
        u = verts[list(face)].sum(axis=0)
        u /= np.linalg.norm(u)
        exterior = t.vertices[1:]
        np.testing.assert_allclose(exterior.mean(axis=0), a * math.sqrt(2 / 3) * u, atol=1e-12)
        # exterior face perpendicular to the face-centre direction
        np.testing.assert_allclose((exterior - exterior[0]) @ u, 0, atol=1e-12)
        # exterior vertices point at the icosahedron face's vertices
        for p, i in zip(sorted(exterior.tolist()), sorted(verts[list(face)].tolist())):
            pass
        for p in exterior:
            w = p - (p @ u) * u
            best = max((w / np.linalg.norm(w)) @ ((verts[i] - (verts[i] @ u) * u) / np.linalg.norm(verts[i] - (verts[i] @ u) * u)) for i in face)
            assert best == pytest.approx(1.0, abs=1e-12)
        centres.append(t.centroid / np.linalg.norm(t.centroid))
    face_dirs = [verts[list(f)].sum(axis=0) for f in faces]
    face_dirs = [d / np.linalg.norm(d) for d in face_dirs]
    for i, j in itertools.combinations(range(20), 2):
        assert centres[i] @ centres[j] == pytest.approx(face_dirs[i] @ face_dirs[j], abs=1e-9)


def test_icosahedral_gaps_are_open(ico):
    # smallest angle between facing side planes of adjacent tetrahedra is positive
    verts, faces = icosahedron()
    gaps = []
    for i, j in icosahedral_adjacency():
        edge = verts[list(set(faces[i]) & set(faces[j]))]
        direction = (edge[0] + edge[1]) / 2
        gaps.append(_min_facing_angle(ico[i], ico[j]))
    assert min(gaps) > 1e-3
    assert find_face_junctions(ico) == []


def _min_facing_angle(t0, t1):
    from oracles import faces_of

    best = math.inf
    for _, n0 in faces_of(t0.vertices):
        for _, n1 in faces_of(t1.vertices):
            best = min(best, math.acos(np.clip(-n0 @ n1, -1, 1)))
    return best


def test_icosahedral_plane_classes(ico, twisted_ico):
    assert plane_classes(ico).count == 40
    assert plane_classes(twisted_ico).count == 10


def test_twisted_icosahedral_junctions(twisted_ico):
    junctions = find_face_junctions(twisted_ico)
    assert len(junctions) == 30
    assert sorted((j.faces[0].tet_id, j.faces[1].tet_id) for j in junctions) == icosahedral_adjacency()
    for j in junctions:
        assert abs(j.angle_min - beta()) < 1e-9
        assert j.offset_in_delta == pytest.approx(2.0, abs=1e-6)
    assert twisted_ico.parameters["twist_angle"] == float(alpha_icosahedral())


def test_twisted_icosahedral_is_isometric_and_non_interpenetrating(twisted_ico):
    for t in twisted_ico:
        np.testing.assert_allclose(t.edge_lengths(), 1.0, atol=1e-12)
    assert twisted_ico.max_overlap_volume() < 1e-9


@pytest.mark.parametrize("fixture", ["ico", "twisted_ico"])
def test_icosahedral_symmetry(request, fixture):
    agg = request.getfixturevalue(fixture)
    for rot in icosahedral_rotations():
        moved = agg.transformed(RigidMotion(rot, np.zeros(3)))
        assert _same_tetra_set(moved.tetrahedra, agg.tetrahedra)


def test_aggregate_id_invariant():
    ring = build_edge_ring(3)
    from tetragg import InvariantError

    with pytest.raises(InvariantError):
        Aggregate("edge_ring", 1.0, [ring[1], ring[0]])
    with pytest.raises(DomainError):
        Aggregate("cube", 1.0, [])


def test_validate_flags_interpenetration(rings):
    ring = rings[5]
    tets = list(ring.tetrahedra)
    tets[1] = tets[0].with_id(1)
    with pytest.raises(Exception, match="interpenetrate"):
        ring.replace(tets).validate()
