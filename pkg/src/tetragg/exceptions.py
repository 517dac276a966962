class DomainError(ValueError):
    """An argument lies outside the range an operation is defined on."""


class StateError(RuntimeError):
    """An operation was applied to an aggregate in the wrong state."""


class InvariantError(ValueError):
    """Input geometry violates a structural invariant (e.g. a degenerate tetrahedron)."""


class StructureError(RuntimeError):
    """An aggregate lacks the structure an analysis needs."""


class ParseError(ValueError):
    """Serialized input is malformed; the message names the line or field."""
