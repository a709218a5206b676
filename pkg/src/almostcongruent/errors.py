"""Exception types raised across the toolkit."""


class ToolkitError(Exception):
    """Base class for every error raised by this package."""


class DegenerateTriangle(ToolkitError, ValueError):
    pass


class ConcentricCircles(ToolkitError, ValueError):
    pass


class CoincidentPoints(ToolkitError, ValueError):
    pass


class AmbiguousDecision(ToolkitError):
    """A numeric decision fell inside the guard band between ``tol`` and the
    coarse recheck threshold, so neither verdict can be trusted."""

    def __init__(self, message, residual=None, evidence=None):
        super().__init__(message)
        self.residual = residual
        self.evidence = evidence or {}


class NotDense(ToolkitError, ValueError):
    pass


class DimensionMismatch(ToolkitError, ValueError):
    pass


class DepthExceeded(ToolkitError):
    def __init__(self, message, unresolved=0):
        super().__init__(message)
        self.unresolved = unresolved


class DivisibilityViolation(ToolkitError, ValueError):
    pass


class TypeMismatch(ToolkitError, ValueError):
    pass


class RadiusTooLarge(ToolkitError, ValueError):
    pass


class OutOfSupportedRange(ToolkitError, ValueError):
    pass


class UnknownCommand(ToolkitError):
    pass


class MalformedInput(ToolkitError, ValueError):
    pass
