"""Exception hierarchy shared across the package."""


class BraidnomialError(Exception):
    """Base class. ``code`` is the CLI exit status the error maps to."""

    code = 3


class InvalidEquation(BraidnomialError, ValueError):
    code = 2


class NonConvexNewton(InvalidEquation):
    pass


class BadMiddleGcd(InvalidEquation):
    pass


class QTooSmall(InvalidEquation):
    pass


class GcdConditionViolated(InvalidEquation):
    pass


class NoInverse(InvalidEquation):
    pass


class OutOfRange(BraidnomialError, ValueError):
    code = 2


class StrandMismatch(BraidnomialError, ValueError):
    code = 2


class DegreeMismatch(BraidnomialError, ValueError):
    code = 2


class DegenerateProjection(BraidnomialError):
    pass


class SnapCollision(BraidnomialError):
    pass


class UnresolvedCrossing(DegenerateProjection):
    pass


class StepCollapse(BraidnomialError):
    pass


class ResidualBlowup(BraidnomialError):
    pass


class LabelAmbiguity(BraidnomialError):
    pass


class AmbiguousCollision(BraidnomialError):
    pass
