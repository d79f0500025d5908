"""Exception hierarchy shared by every gpgame module."""


class GpGameError(Exception):
    """Base class for all gpgame errors."""


class PreconditionViolated(GpGameError, ValueError):
    pass


class ParameterOutOfRange(GpGameError, ValueError):
    pass


class ParseError(GpGameError, ValueError):
    """Raised by the family-expression parser.

    ``offset`` is the byte offset into the input where parsing failed.
    """

    def __init__(self, offset: int, expected: str, text: str = ""):
        self.offset = offset
        self.expected = expected
        self.text = text
        super().__init__(f"parse error at offset {offset}: expected {expected}")


class VertexCapExceeded(GpGameError):
    pass


class BudgetExceeded(GpGameError):
    """A search hit its node or state budget.

    ``partial`` carries whatever the search had established so far (for the gp
    solver, a lower-bound-only report).
    """

    def __init__(self, message: str, partial=None):
        super().__init__(message)
        self.partial = partial


class IllegalMove(GpGameError, ValueError):
    """``reason`` is one of ``"condition (i)"``, ``"condition (ii)"``,
    ``"already played"`` or ``"out of range"``."""

    def __init__(self, vertex: int, reason: str, witness: tuple = ()):
        self.vertex = vertex
        self.reason = reason
        self.witness = witness
        detail = ""
        if reason == "condition (i)":
            u, v = witness
            detail = f": {vertex} lies on a geodesic between played vertices {u} and {v}"
        elif reason == "condition (ii)":
            u, w = witness
            detail = f": played vertex {w} lies on a geodesic between {vertex} and played vertex {u}"
        super().__init__(f"illegal move {vertex} ({reason}){detail}")


class NotATree(GpGameError, ValueError):
    pass


class UnknownSuite(GpGameError, KeyError):
    pass


class CacheMismatch(GpGameError):
    pass
