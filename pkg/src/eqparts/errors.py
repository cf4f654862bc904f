"""Exception hierarchy shared by every module.

Each domain error carries a stable ``name`` that the CLI reports verbatim.
"""


class CompositionError(Exception):
    """Base class for domain errors."""

    name = "CompositionError"


class PartSpecError(CompositionError, ValueError):
    name = "PartSpecError"

    def __init__(self, message, text="", position=None, expected=None):
        self.text = text
        self.position = position
        self.expected = expected
        detail = message
        if position is not None:
            detail += f" at position {position}"
        if expected:
            detail += f" (expected {expected})"
        super().__init__(detail)


class DomainError(CompositionError, ValueError):
    """Evaluation point outside the disk of convergence."""

    name = "DomainError"


class NotSupercritical(CompositionError):
    name = "NotSupercritical"


class Periodic(CompositionError):
    name = "Periodic"


class UndefinedProbability(CompositionError, ZeroDivisionError):
    name = "UndefinedProbability"


class NoCompositions(CompositionError):
    name = "NoCompositions"


class DegenerateVariance(CompositionError):
    name = "DegenerateVariance"


class CapacityExceeded(CompositionError):
    name = "CapacityExceeded"
