"""Exception hierarchy shared by the whole package."""


class NormalGeomError(Exception):
    """Base class for all package errors."""


class FieldError(NormalGeomError):
    """Bad field construction or arithmetic: char 2, non-prime modulus,
    mixed-field operands, division by zero."""


class ParseError(NormalGeomError):
    """Syntax error in a polynomial expression; carries a position."""

    def __init__(self, message, position=None):
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.position = position


class GeometryError(NormalGeomError):
    """Degenerate projective input: coincident points/lines, point off a
    required locus, tangent equal to the line at infinity, and similar."""


class CurveError(NormalGeomError):
    """Rejected curve: inhomogeneous, degree < 2, repeated factors, or the
    line at infinity as a component."""


class EliminationError(NormalGeomError):
    """An elimination pipeline could not certify its output; carries
    diagnostics assembled by the caller."""

    def __init__(self, message, diagnostics=None):
        super().__init__(message)
        self.diagnostics = diagnostics or {}


class UnstableError(NormalGeomError):
    """Randomized counting did not stabilize; carries all observed values."""

    def __init__(self, message, values=None):
        super().__init__(message)
        self.values = values or []


class SamplingError(NormalGeomError):
    """A sampling budget was exhausted before finding the required points."""
