"""Exception hierarchy shared by all modules."""


class WronskiError(Exception):
    """Base class for all errors raised by this package."""


class ZeroPolynomial(WronskiError):
    pass


class DegeneratePair(WronskiError):
    pass


class InvalidBallot(WronskiError):
    pass


class InvalidContent(WronskiError):
    pass


class NotPermitted(WronskiError):
    pass


class NonPositiveParameter(WronskiError):
    pass


class ScheduleExhausted(WronskiError):
    pass


class ChartDegenerate(WronskiError):
    pass


class NewtonDiverged(WronskiError):
    pass


class SingularJacobian(WronskiError):
    pass


class PathStuck(WronskiError):
    pass


class CollisionDetected(WronskiError):
    pass


class CountMismatch(WronskiError):
    def __init__(self, message, branch_logs=None):
        super().__init__(message)
        self.branch_logs = branch_logs or []


class MultipleRoot(WronskiError):
    pass


class DuplicatePoints(WronskiError):
    pass


class NegativeDiscriminant(WronskiError):
    pass


class NotASolution(WronskiError):
    pass


class Collision(WronskiError):
    pass


class NonzeroResidue(WronskiError):
    pass


class SharedRoot(WronskiError):
    pass


class TraceLost(WronskiError):
    pass


class NonRealInput(WronskiError):
    pass


class LengthMismatch(WronskiError):
    pass


class IndexOutOfRange(WronskiError):
    pass
