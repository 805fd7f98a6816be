"""Exception hierarchy.

``ValidationError`` covers bad input (CLI exit code 1); ``NumericalError``
covers failures of an algorithm on valid input (CLI exit code 2).
"""


class KreinError(Exception):
    exit_code = 1


class ValidationError(KreinError, ValueError):
    exit_code = 1


class NumericalError(KreinError, ArithmeticError):
    exit_code = 2


class IndexedError(ValidationError):
    """Validation failure tied to one member of a family."""

    def __init__(self, index, message=None):
        self.index = index
        super().__init__(message or f"{type(self).__name__} at index {index}")


# numerics
class NotSymmetric(ValidationError):
    pass


class NoConvergence(NumericalError):
    pass


# krein core
class ZeroDimension(ValidationError):
    pass


class NotInvolution(ValidationError):
    pass


class DimensionMismatch(ValidationError):
    pass


class ZeroVector(IndexedError):
    pass


class NeutralVector(IndexedError):
    pass


# subspaces
class AllZero(ValidationError):
    pass


class NotDefinite(ValidationError):
    pass


# frames
class EmptyPart(ValidationError):
    pass


class NotJFrame(ValidationError):
    pass


class NotParsevalPart(ValidationError):
    pass


class NotStrictlyDisjoint(ValidationError):
    pass


class NotMaximal(ValidationError):
    pass


class MismatchedSpans(ValidationError):
    pass


class NotParsevalInput(ValidationError):
    pass


class PartitionMismatch(ValidationError):
    pass


# potentials
class SameIndex(ValidationError):
    pass


class ZetaOutOfRange(ValidationError):
    pass


# optimization
class TooFew(ValidationError):
    pass


class BadSignature(ValidationError):
    pass


# documents
class ParseError(ValidationError):
    pass
