"""Exception types raised by the smx package."""


class SmxError(Exception):
    """Base class for every error raised by smx."""


class PoleAtNonPositiveInteger(SmxError, ValueError):
    def __init__(self, z):
        self.z = z
        super().__init__(f"argument {z!r} is at a pole (non-positive integer)")


class SeriesNotConverged(SmxError, ArithmeticError):
    def __init__(self, max_terms):
        self.max_terms = max_terms
        super().__init__(f"series did not converge within {max_terms} terms")


class DomainTooSmall(SmxError, ValueError):
    pass


class EvaluationAtOrigin(SmxError, ValueError):
    pass


class PoleProximity(SmxError):
    """Evaluation point lies within the guard radius of a pole or zero of S."""

    def __init__(self, k, nearest, kind="pole"):
        self.k = k
        self.nearest_pole = nearest
        self.kind = kind
        super().__init__(f"k = {k!r} is within the guard radius of a {kind} at {nearest!r}")


class SingularAtRedundantZeroPoint(SmxError):
    pass


class UnwrapAmbiguity(SmxError):
    pass


class NotABoundState(SmxError, ValueError):
    pass


class DegenerateZero(SmxError):
    pass


class CoincidentPhysicalPole(SmxError):
    pass


class CrossCheckFailed(SmxError, ArithmeticError):
    pass


class GridTooCoarse(SmxError):
    pass


class MaxDepthExceeded(SmxError):
    pass


class PoleOnContour(SmxError):
    pass


class ProbeFailure(SmxError):
    pass
