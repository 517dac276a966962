import math

import pytest

from tetragg import (
    DomainError,
    alpha_edge_ring,
    alpha_icosahedral,
    beta,
    beta_edge_ring,
    gamma_dihedral,
    phi,
    verify_beta3_identity,
)
from tetragg.golden import (
    AngleValue,
    junction_angle_for_subtense,
    table_alpha_closed_form,
    table_beta_closed_form,
)

from oracles import ALPHA_20, ALPHA_3, ALPHA_5, BETA, BETA_3, COS_BETA, GAMMA


def test_phi_definition():
    assert phi() == 1.6180339887498949
    assert abs(phi() ** 2 - phi() - 1) < 1e-15
    assert abs(1 / phi() - (phi() - 1)) < 1e-15


def test_beta_value():
    b = beta()
    assert isinstance(b, AngleValue)
    assert b.provenance == "closed_form"
    assert b == pytest.approx(BETA, abs=1e-15)
    assert b.degrees == pytest.approx(15.522487814070076, abs=1e-12)
    assert math.cos(b) == pytest.approx(COS_BETA, abs=1e-15)
    assert abs(beta() - beta_edge_ring(5)) < 1e-12


def test_gamma_dihedral():
    g = gamma_dihedral()
    assert g == pytest.approx(GAMMA, abs=1e-15)
    assert abs(math.cos(g) - 1 / 3) < 1e-15
    assert 5 * g < 2 * math.pi


@pytest.mark.parametrize(
    "n, expected",
    [(3, ALPHA_3), (4, math.pi / 4), (5, ALPHA_5)],
)
def test_alpha_edge_ring_values(n, expected):
    assert alpha_edge_ring(n) == pytest.approx(expected, abs=1e-14)
    assert abs(alpha_edge_ring(n) - table_alpha_closed_form(n)) < 1e-12


def test_alpha_closed_forms_from_table():
    assert abs(alpha_edge_ring(3) - math.acos(1 / math.sqrt(6))) < 1e-12
    p = phi()
    assert abs(alpha_edge_ring(5) - math.acos(p**2 / math.sqrt(2 * (p + 2)))) < 1e-12


@pytest.mark.parametrize(
    "n, expected",
    [(3, BETA_3), (4, math.pi / 3), (5, BETA)],
)
def test_beta_edge_ring_values(n, expected):
    assert beta_edge_ring(n) == pytest.approx(expected, abs=1e-14)
    assert abs(beta_edge_ring(n) - table_beta_closed_form(n)) < 1e-12


@pytest.mark.parametrize("bad", [2, 6, 0, -3, 4.5, True])
def test_ring_formulas_reject_out_of_range(bad):
    with pytest.raises(DomainError, match=r"\[3, 5\]"):
        alpha_edge_ring(bad)
    with pytest.raises(DomainError):
        beta_edge_ring(bad)


def test_alpha_icosahedral():
    a20 = alpha_icosahedral()
    assert a20 == pytest.approx(ALPHA_20, abs=1e-15)
    assert abs(math.cos(a20) * 2 * math.sqrt(2) - phi() ** 2) < 1e-14
    for n in (3, 4, 5):
        assert abs(a20 - alpha_edge_ring(n)) > 1e-3


def test_beta3_identity():
    assert verify_beta3_identity(1e-12)
    assert not verify_beta3_identity(1e-300)
    assert junction_angle_for_subtense(2 * math.pi / 3) == junction_angle_for_subtense(-2 * math.pi / 3)
    with pytest.raises(DomainError):
        verify_beta3_identity(0)


@pytest.mark.parametrize("n", [3, 4, 5])
def test_half_angle_relation(n):
    # tan(beta_n / 2) = sin(gamma / 2) tan(alpha_n)
    lhs = math.tan(beta_edge_ring(n) / 2)
    rhs = math.sin(gamma_dihedral() / 2) * math.tan(alpha_edge_ring(n))
    assert abs(lhs - rhs) < 1e-12


def test_alpha_monotone_in_ring_size():
    assert alpha_edge_ring(3) > alpha_edge_ring(4) > alpha_edge_ring(5)


@pytest.mark.parametrize(
    "angle",
    [beta, gamma_dihedral, alpha_icosahedral]
    + [lambda n=n: alpha_edge_ring(n) for n in (3, 4, 5)]
    + [lambda n=n: beta_edge_ring(n) for n in (4, 5)],
)
def test_angles_in_open_quarter_turn(angle):
    value = angle()
    assert math.isfinite(value)
    assert 0 < value <= math.pi / 2


def test_beta_3_exceeds_quarter_turn_but_within_pi():
    # the only produced angle above pi/2; still within [0, pi]
    assert math.pi / 2 < beta_edge_ring(3) < math.pi
