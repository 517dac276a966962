"""Golden-ratio constants and the edge-ring angle formulas.

Every value is computed from exact constant expressions at call time; no
decimal literals appear on the evaluation paths.
"""

import math

from .exceptions import DomainError

CLOSED_FORM = "closed_form"
EVALUATED = "evaluated"

MIN_RING = 3
MAX_RING = 5


class AngleValue(float):
    """A float in radians that remembers how it was obtained.

    Behaves exactly like the underlying float in arithmetic; ``provenance`` is
    either ``"closed_form"`` or ``"evaluated"``.
    """

    __slots__ = ("provenance",)

    def __new__(cls, radians, provenance=EVALUATED):
        obj = super().__new__(cls, radians)
        obj.provenance = provenance
        return obj

    @property
    def radians(self):
        return float(self)

    @property
    def degrees(self):
        return math.degrees(self)

    def __repr__(self):
        return f"AngleValue({float(self)!r}, {self.provenance!r})"

    def __reduce__(self):
        return (AngleValue, (float(self), self.provenance))


def phi():
    """Golden ratio (1 + sqrt 5) / 2."""
    return (1 + math.sqrt(5)) / 2


def beta():
    """Junction angle arccos((3 phi - 1) / 4), about 15.52 degrees."""
    return AngleValue(math.acos((3 * phi() - 1) / 4), CLOSED_FORM)


def gamma_dihedral():
    """Dihedral angle of a regular tetrahedron, arccos(1/3)."""
    return AngleValue(math.acos(1 / 3), CLOSED_FORM)


def _check_ring(n):
    if isinstance(n, bool) or int(n) != n or not MIN_RING <= n <= MAX_RING:
        raise DomainError(
            f"edge-ring size must be an integer in [{MIN_RING}, {MAX_RING}], got {n!r}"
        )


def _gap_root(theta):
    # sqrt(cos^2(gamma/2) - cos^2(theta/2)); shared by both ring formulas
    half_gamma = gamma_dihedral() / 2
    return math.sqrt(math.cos(half_gamma) ** 2 - math.cos(theta / 2) ** 2)


def alpha_edge_ring(n):
    """Rotation that closes the gaps of an ``n``-tetrahedron edge ring.

    Parameters
    ----------
    n : int
        Ring size, 3 <= n <= 5.

    Raises
    ------
    DomainError
        If ``n`` is outside [3, 5].
    """
    _check_ring(n)
    theta = 2 * math.pi / n
    half_gamma = gamma_dihedral() / 2
    ratio = _gap_root(theta) / (math.sin(half_gamma) * math.cos(theta / 2))
    return AngleValue(math.atan(ratio), EVALUATED)


def junction_angle_for_subtense(theta):
    """Right-hand side of the beta_n relation for a general subtended angle ``theta``.

    Even in ``theta``; valid while cos^2(theta/2) <= cos^2(gamma/2).
    """
    return 2 * math.atan(_gap_root(theta) / math.cos(theta / 2))


def beta_edge_ring(n):
    """Face-junction angle produced by twisting an ``n``-tetrahedron edge ring."""
    _check_ring(n)
    return AngleValue(junction_angle_for_subtense(2 * math.pi / n), EVALUATED)


def alpha_icosahedral():
    """Twist angle arccos(phi^2 / (2 sqrt 2)) for 20 tetrahedra about a vertex."""
    return AngleValue(math.acos(phi() ** 2 / (2 * math.sqrt(2))), CLOSED_FORM)


def table_alpha_closed_form(n):
    """Closed-form twist angles listed for rings of 3, 4 and 5."""
    _check_ring(n)
    p = phi()
    forms = {
        3: lambda: math.acos(1 / math.sqrt(6)),
        4: lambda: math.pi / 4,
        5: lambda: math.acos(p**2 / math.sqrt(2 * (p + 2))),
    }
    return AngleValue(forms[n](), CLOSED_FORM)


def table_beta_closed_form(n):
    """Closed-form junction angles listed for rings of 3, 4 and 5."""
    _check_ring(n)
    forms = {
        3: lambda: 2 * math.pi / 3 - beta(),
        4: lambda: math.pi / 3,
        5: lambda: float(beta()),
    }
    return AngleValue(forms[n](), CLOSED_FORM)


def verify_beta3_identity(tolerance):
    """Check that 2pi/3 - beta equals beta_3, and that theta = +-2pi/3 solves it.

    Returns True only when both the direct comparison and the substitution of
    each sign of theta agree within ``tolerance``.
    """
    if not tolerance > 0:
        raise DomainError("tolerance must be positive")
    lhs = 2 * math.pi / 3 - beta()
    if not abs(lhs - beta_edge_ring(3)) < tolerance:
        return False
    for theta in (2 * math.pi / 3, -2 * math.pi / 3):
        if not abs(junction_angle_for_subtense(theta) - lhs) < tolerance:
            return False
    return True
