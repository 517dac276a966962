"""Verification suites for the angle identities, plane-class counts, helix symmetries and junction offsets."""

from __future__ import annotations

import math

from .aggregates import build_edge_ring, build_icosahedral, twist_edge_ring, twist_icosahedral
from .analysis import FaceJunction, find_face_junctions, plane_classes, verify_fig8_family
from .geometry import DEFAULT_TOL, ToleranceConfig, screw_decompose
from .golden import (
    alpha_edge_ring,
    beta,
    beta_edge_ring,
    junction_angle_for_subtense,
    table_alpha_closed_form,
    table_beta_closed_form,
)
from .helix import (
    Chirality,
    HelixSpec,
    build_bc_helix,
    build_modified_helix,
    detect_period,
    projected_symmetry_order,
    step_motion,
)
from .report import Check, Report, close, exact

SUITES = ("identities", "junctions", "table1", "helix")

IDENTITY_TOL = 1e-12
ANGLE_TOL = 1e-9
OFFSET_TOL = 1e-6
HELIX_MAX_COUNT = 30
SATURATION_LIMIT = 7

TABLE1 = {
    "3-ring": (12, 9),
    "4-ring": (16, 4),
    "5-ring": (20, 10),
    "icosahedral": (60, 10),
    "3-BC helix": ("3n+1", 9),
    "5-BC helix": ("3n+1", 10),
}


def five_bc(count: int, a: float = 1.0):
    return build_modified_helix(HelixSpec(count, Chirality.RIGHT, Chirality.RIGHT, a, modified=True))


def three_bc(count: int, a: float = 1.0):
    return build_modified_helix(HelixSpec(count, Chirality.RIGHT, Chirality.LEFT, a, modified=True))


def canonical(count: int, a: float = 1.0):
    return build_bc_helix(HelixSpec(count, Chirality.RIGHT, a=a))


def identity_checks() -> list[Check]:
    checks = []
    for n in (3, 4, 5):
        checks.append(close(f"alpha_{n} formula vs closed form", alpha_edge_ring(n), table_alpha_closed_form(n), IDENTITY_TOL))
        checks.append(close(f"beta_{n} formula vs closed form", beta_edge_ring(n), table_beta_closed_form(n), IDENTITY_TOL))
    lhs = 2 * math.pi / 3 - beta()
    checks.append(close("2pi/3 - beta == beta_3", lhs, beta_edge_ring(3), IDENTITY_TOL))
    for sign, label in ((1, "+"), (-1, "-")):
        checks.append(
            close(f"theta = {label}2pi/3 solves the beta_3 relation",
                  junction_angle_for_subtense(sign * 2 * math.pi / 3), lhs, IDENTITY_TOL)
        )
    checks.append(close("beta_5 == beta", beta_edge_ring(5), beta(), IDENTITY_TOL))
    return checks


def _gap_closure_checks(name, agg, tol, angle_field, target) -> list[Check]:
    found = find_face_junctions(agg, tol)
    pairs = {(j.faces[0].tet_id, j.faces[1].tet_id) for j in found}
    expected = agg.expected_junction_pairs()
    missing = [p for p in expected if p not in pairs]
    a = agg.edge_length
    checks = [exact(f"{name}: expected pairs detected", len(expected) - len(missing), len(expected))]
    if found:
        residual = max(j.residual for j in found) / a
        worst = max(abs(getattr(j, angle_field) - target) for j in found)
        checks.append(Check(f"{name}: coplanarity residual / a", residual < 1e-9, residual, 0.0, 1e-9))
        checks.append(Check(f"{name}: max |{angle_field} - target|", worst < ANGLE_TOL, worst, 0.0, ANGLE_TOL))
    else:
        checks.append(Check(f"{name}: junctions found", False, 0, len(expected)))
    return checks


def fig8_junctions(a: float = 1.0, tol: ToleranceConfig = DEFAULT_TOL) -> dict[str, FaceJunction]:
    """One junction of each kind in the delta family, built at edge length ``a``."""
    return {
        "icosahedral": find_face_junctions(twist_icosahedral(build_icosahedral(a)), tol)[0],
        "helix": find_face_junctions(five_bc(3, a), tol)[0],
        "ring5": find_face_junctions(twist_edge_ring(build_edge_ring(5, a)), tol)[0],
        "ring3": find_face_junctions(twist_edge_ring(build_edge_ring(3, a)), tol)[0],
    }


def junction_checks(tol: ToleranceConfig = DEFAULT_TOL) -> list[Check]:
    b = float(beta())
    checks = []
    for n in (3, 4, 5):
        ring = twist_edge_ring(build_edge_ring(n))
        if n == 4:
            checks += _gap_closure_checks("4-ring", ring, tol, "angle_raw", math.pi / 3)
        else:
            checks += _gap_closure_checks(f"{n}-ring", ring, tol, "angle_min", b)
    checks += _gap_closure_checks("icosahedral", twist_icosahedral(build_icosahedral()), tol, "angle_min", b)

    unit = fig8_junctions(1.0, tol)
    fig8 = verify_fig8_family(unit, OFFSET_TOL, ANGLE_TOL)
    for row in fig8.rows:
        checks.append(close(f"delta family {row.kind}: signed offset / delta",
                            row.signed_offset_in_delta, row.expected_signed, OFFSET_TOL))
        checks.append(close(f"delta family {row.kind}: angle_min", row.angle_min, b, ANGLE_TOL))
    doubled = fig8_junctions(2.0, tol)
    for kind in unit:
        checks.append(close(f"delta family {kind}: a=2 vs a=1 offset / delta",
                            doubled[kind].offset_in_delta, unit[kind].offset_in_delta, OFFSET_TOL))
    return checks


def table1_checks(tol: ToleranceConfig = DEFAULT_TOL, helix_count: int = HELIX_MAX_COUNT) -> list[Check]:
    """One check per aggregate row: [before, after] plane-class counts."""
    def count(agg):
        return plane_classes(agg, tol).count

    measured = {}
    for n in (3, 4, 5):
        ring = build_edge_ring(n)
        measured[f"{n}-ring"] = [count(ring), count(twist_edge_ring(ring))]
    ico = build_icosahedral()
    measured["icosahedral"] = [count(ico), count(twist_icosahedral(ico))]
    before = count(canonical(helix_count))
    measured["3-BC helix"] = [before, count(three_bc(helix_count))]
    measured["5-BC helix"] = [before, count(five_bc(helix_count))]

    checks = []
    for row, (exp_before, exp_after) in TABLE1.items():
        if exp_before == "3n+1":
            exp_before = 3 * helix_count + 1
        checks.append(exact(f"table1 {row} (before, after)", measured[row], [exp_before, exp_after]))
    return checks


def saturation_start(build, target: int, tol: ToleranceConfig = DEFAULT_TOL, limit: int = HELIX_MAX_COUNT) -> int | None:
    """Smallest n0 with plane-class count == ``target`` for every n in [n0, limit]."""
    n0 = None
    for n in range(limit, 0, -1):
        if plane_classes(build(n), tol).count != target:
            break
        n0 = n
    return n0


def helix_checks(tol: ToleranceConfig = DEFAULT_TOL) -> list[Check]:
    checks = []
    like, unlike, canon = five_bc(12), three_bc(12), canonical(25)
    checks.append(exact("like chiralities: period", detect_period(like, 10, tol), 5))
    checks.append(exact("like chiralities: projected symmetry", projected_symmetry_order(like, tol), 5))
    checks.append(exact("unlike chiralities: period", detect_period(unlike, 10, tol), 3))
    checks.append(exact("unlike chiralities: projected symmetry", projected_symmetry_order(unlike, tol), 3))
    checks.append(exact("canonical: period <= 20", detect_period(canon, 20, tol), None))
    checks.append(exact("canonical: projected symmetry", projected_symmetry_order(canon, tol), 1))
    angle = screw_decompose(step_motion(canon, tol), tol).angle
    checks.append(close("canonical: step screw angle", angle, math.acos(-2 / 3), ANGLE_TOL))
    for n in (2, 10, 30):
        checks.append(exact(f"canonical n={n}: plane classes", plane_classes(canonical(n), tol).count, 3 * n + 1))
    for name, build, target in (("3-BC", three_bc, 9), ("5-BC", five_bc, 10)):
        n0 = saturation_start(build, target, tol)
        checks.append(
            Check(f"{name}: plane classes saturate at {target} from n0 <= {SATURATION_LIMIT}",
                  n0 is not None and n0 <= SATURATION_LIMIT, n0, SATURATION_LIMIT)
        )
    return checks


_RUNNERS = {
    "identities": lambda tol: identity_checks(),
    "junctions": junction_checks,
    "table1": table1_checks,
    "helix": helix_checks,
}


def run_suite(suite: str = "all", tol: ToleranceConfig = DEFAULT_TOL) -> Report:
    if suite == "all":
        names = SUITES
    elif suite in _RUNNERS:
        names = (suite,)
    else:
        raise ValueError(f"unknown suite {suite!r}; choose from {', '.join(SUITES + ('all',))}")
    report = Report()
    for name in names:
        report.checks += _RUNNERS[name](tol)
    return report
