"""Exception hierarchy.

Input/precondition problems derive from ValueError, numerical failures from
RuntimeError; the CLI maps the two families to distinct exit codes.
"""


class DomainError(ValueError):
    """An argument left the mathematical domain of an operation."""


class InvalidGluing(ValueError):
    """A gluing description does not define a surface."""


class SelfGluedEdge(ValueError):
    """Both sides of the edge lie in one hexagon; it cannot be flipped."""


class NonFillable(ValueError):
    """The deleted edges contain a dual cycle, so a complementary region
    is not a disk."""

    def __init__(self, message, cycle=None):
        super().__init__(message)
        self.cycle = cycle


class InvalidTarget(ValueError):
    """The requested coordinate vector lies outside the solvable region."""

    def __init__(self, message, cycle=None):
        super().__init__(message)
        self.cycle = cycle


class UnknownSuite(ValueError):
    """No verification suite with the requested name."""


class NoConvergence(RuntimeError):
    """An iterative solve did not reach its tolerance."""

    def __init__(self, message, residual_trace=None):
        super().__init__(message)
        self.residual_trace = list(residual_trace or [])


class NonTermination(RuntimeError):
    """The flip loop hit its iteration cap."""

    def __init__(self, message, flip_trace=None):
        super().__init__(message)
        self.flip_trace = list(flip_trace or [])


class NumericalFailure(RuntimeError):
    """A geometric computation produced values inconsistent with the
    configuration it models."""


class DegenerateCellError(RuntimeError):
    """Near-zero edges form a dual cycle; the cell merge is inconsistent."""


class TooManyCycles(RuntimeError):
    """Cycle enumeration exceeded the safety cap."""
