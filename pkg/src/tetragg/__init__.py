"""Aggregates of regular tetrahedra, golden-ratio twists, and junction analysis."""

__version__ = "0.1.0"

from .exceptions import DomainError, InvariantError, ParseError, StateError, StructureError
from .golden import (
    alpha_edge_ring,
    alpha_icosahedral,
    beta,
    beta_edge_ring,
    gamma_dihedral,
    phi,
    verify_beta3_identity,
)
from .geometry import (
    FaceRef,
    Plane,
    RigidMotion,
    Screw,
    Tetrahedron,
    ToleranceConfig,
    append_mirror,
    face_plane,
    intersection_volume,
    reference_tetrahedron,
    rotation_about_line,
    screw_decompose,
)
from .aggregates import (
    Aggregate,
    build_edge_ring,
    build_icosahedral,
    twist_edge_ring,
    twist_icosahedral,
)
from .helix import (
    HelixSpec,
    build_bc_helix,
    build_modified_helix,
    detect_period,
    projected_symmetry_order,
)
from .analysis import (
    FaceJunction,
    PlaneClassPartition,
    delta,
    find_face_junctions,
    junction_projection,
    junction_signature,
    plane_classes,
    verify_fig8_family,
)
