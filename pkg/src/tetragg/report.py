"""Analysis reports: what ``tetragg analyze`` and ``tetragg verify`` emit."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any

from . import __version__
from .aggregates import (
    BC_HELIX,
    EDGE_RING,
    ICOSAHEDRAL,
    MODIFIED_BC_HELIX,
    Aggregate,
    build_edge_ring,
    build_icosahedral,
)
from .analysis import FaceJunction, find_face_junctions, plane_classes
from .exceptions import StructureError
from .geometry import DEFAULT_TOL, ToleranceConfig
from .helix import HelixSpec, build_bc_helix, detect_period, projected_symmetry_order


@dataclass
class Check:
    name: str
    passed: bool
    measured: Any
    expected: Any
    tolerance: float = 0.0

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "passed": bool(self.passed),
            "measured": self.measured,
            "expected": self.expected,
            "tolerance": self.tolerance,
        }


def close(name: str, measured: float, expected: float, tolerance: float) -> Check:
    measured, expected = float(measured), float(expected)
    return Check(name, abs(measured - expected) < tolerance, measured, expected, tolerance)


def exact(name: str, measured, expected) -> Check:
    return Check(name, measured == expected, measured, expected, 0.0)


@dataclass
class Report:
    aggregate: dict | None = None
    plane_class_count_before: int | None = None
    plane_class_count_after: int | None = None
    junctions: list[dict] | None = None
    period: int | None = None
    symmetry_order: int | None = None
    checks: list[Check] = field(default_factory=list)
    tool_version: str = __version__

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def to_dict(self) -> dict:
        return {
            "tool_version": self.tool_version,
            "aggregate": self.aggregate,
            "plane_class_count_before": self.plane_class_count_before,
            "plane_class_count_after": self.plane_class_count_after,
            "junctions": self.junctions,
            "period": self.period,
            "symmetry_order": self.symmetry_order,
            "checks": [c.to_dict() for c in self.checks],
            "passed": self.passed,
        }


def junction_record(j: FaceJunction) -> dict:
    lo, hi = j.faces
    return {
        "faces": [[lo.tet_id, lo.face_index], [hi.tet_id, hi.face_index]],
        "angle_raw": j.angle_raw,
        "angle_min": j.angle_min,
        "angle_min_degrees": math.degrees(j.angle_min),
        "offset_in_delta": j.offset_in_delta,
        "signed_offset_in_delta": j.signed_offset_in_delta,
    }


def untransformed_counterpart(agg: Aggregate) -> Aggregate | None:
    """The aggregate a transformed one started from (None if ``agg`` is untransformed)."""
    p = agg.parameters
    if agg.kind == EDGE_RING and agg.twisted:
        return build_edge_ring(len(agg), agg.edge_length)
    if agg.kind == ICOSAHEDRAL and agg.twisted:
        return build_icosahedral(agg.edge_length)
    if agg.kind == MODIFIED_BC_HELIX:
        return build_bc_helix(HelixSpec(len(agg), p.get("underlying", "right"), a=agg.edge_length))
    return None


def analyze(
    agg: Aggregate,
    *,
    planes: bool = True,
    junctions: bool = True,
    period: bool = True,
    symmetry: bool = True,
    max_m: int = 10,
    tol: ToleranceConfig = DEFAULT_TOL,
) -> Report:
    """Run the requested analyses on ``agg``.  Helix-only analyses are skipped elsewhere."""
    report = Report(
        aggregate={
            "kind": agg.kind,
            "edge_length": agg.edge_length,
            "count": len(agg),
            "parameters": dict(sorted(agg.parameters.items())),
        }
    )
    if planes:
        count = plane_classes(agg, tol).count
        before = untransformed_counterpart(agg)
        if before is None:
            report.plane_class_count_before = count
        else:
            report.plane_class_count_before = plane_classes(before, tol).count
            report.plane_class_count_after = count
    if junctions:
        report.junctions = [junction_record(j) for j in find_face_junctions(agg, tol)]
    is_helix = agg.kind in (BC_HELIX, MODIFIED_BC_HELIX)
    if period and is_helix and len(agg) > 1:
        report.period = detect_period(agg, min(max_m, len(agg) - 1), tol)
    if symmetry and is_helix and len(agg) > 1:
        try:
            report.symmetry_order = projected_symmetry_order(agg, tol)
        except StructureError:
            report.symmetry_order = None
    return report
