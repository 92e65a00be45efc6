"""Exception hierarchy.

Validators return reports; these are raised only when an operation cannot
proceed at all (bad input geometry, violated preconditions, parse errors).
"""


class OpenBookError(Exception):
    """Base class for all errors raised by this package."""


class MalformedGeometry(OpenBookError):
    pass


class NonGenericSlice(OpenBookError):
    pass


class InvalidDiagram(OpenBookError):
    pass


class UnknownName(OpenBookError, KeyError):
    pass


class PreconditionViolation(OpenBookError):
    """An operation was called on input that does not meet its contract."""


class TangentialCrossing(PreconditionViolation):
    pass


class PointNotOnStrand(PreconditionViolation):
    pass


class GenerationFailure(OpenBookError):
    pass


class EpsilonTooLarge(PreconditionViolation):
    def __init__(self, epsilon, bound, detail=""):
        self.epsilon = epsilon
        self.bound = bound
        msg = f"epsilon {epsilon} exceeds admissible bound {bound}"
        if detail:
            msg += f" ({detail})"
        super().__init__(msg)


class InvalidArcDiagram(PreconditionViolation):
    pass


class CuspOnSkeleton(PreconditionViolation):
    pass


class IndexOutOfRange(PreconditionViolation):
    pass


class ThetaCollision(PreconditionViolation):
    pass


class SelfBand(PreconditionViolation):
    pass


class NotDestabilizable(PreconditionViolation):
    pass


class NegativePatternBand(PreconditionViolation):
    pass


class NonSqpInput(PreconditionViolation):
    pass


class InvalidP(PreconditionViolation):
    pass


class ParseError(OpenBookError):
    def __init__(self, message, line=None, column=None, path=None):
        self.line = line
        self.column = column
        self.path = path
        where = ""
        if path is not None:
            where += f"{path}:"
        if line is not None:
            where += f"{line}:"
            if column is not None:
                where += f"{column}:"
        super().__init__(f"{where} {message}" if where else message)
