"""Exception hierarchy shared by all modules."""


class CobasicError(Exception):
    """Base class; ``exit_code`` is what the command line returns for it."""

    exit_code = 1


class IngestionError(CobasicError):
    exit_code = 2


class AlgebraError(CobasicError):
    exit_code = 2


class AssociativityViolation(AlgebraError):
    def __init__(self, triple, lhs, rhs):
        self.triple = triple
        super().__init__(
            "(e_%d e_%d) e_%d != e_%d (e_%d e_%d): %s vs %s"
            % (triple * 2 + (lhs, rhs))
        )


class UnitViolation(AlgebraError):
    def __init__(self, index, message=""):
        self.index = index
        super().__init__(message or "unit law fails on basis element %d" % index)


class IndexOutOfRange(AlgebraError):
    pass


class UnknownAlgebraName(AlgebraError):
    pass


class BadParameter(AlgebraError):
    pass


class DimensionMismatch(CobasicError):
    pass


class AlgebraMismatch(CobasicError):
    pass


class NoUnit(CobasicError):
    pass


class DegreeZero(CobasicError):
    pass


class DegreeMismatch(CobasicError):
    pass


class NotAntisymmetric(CobasicError):
    pass


class AmbientMismatch(CobasicError):
    pass


class NotASubspace(CobasicError):
    pass


class CapacityExceeded(CobasicError):
    exit_code = 3


class SubcomplexViolation(CobasicError):
    pass


class TheoremViolation(CobasicError):
    def __init__(self, message, tables=None):
        self.tables = tables or {}
        super().__init__(message)


class ConvergenceViolation(CobasicError):
    pass


class ZeroPolynomialDegree(CobasicError):
    pass


class NotClosed(CobasicError):
    pass


class BadIndex(CobasicError):
    pass


class SizeMismatch(CobasicError):
    pass
