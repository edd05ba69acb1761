"""Exception types shared across the package."""


class PentagonError(Exception):
    """Base class; carries an optional witness for reports."""

    def __init__(self, message="", witness=None):
        super().__init__(message)
        self.witness = witness


class DivisionByZero(PentagonError, ZeroDivisionError):
    pass


class ConductorMismatch(PentagonError):
    pass


class NotADivisor(PentagonError):
    pass


class DimensionMismatch(PentagonError):
    pass


class NotASquareDimension(PentagonError):
    pass


class SingularMatrix(PentagonError):
    pass


class NotBijective(PentagonError):
    pass


class NotRPE(PentagonError):
    pass


class StructureViolation(PentagonError):
    pass


class TagMismatch(PentagonError):
    pass


class NotACoalgebraBasis(PentagonError):
    pass


class CounitZero(PentagonError):
    pass


class UnitNotInBasis(PentagonError):
    pass


class NotAbelian(PentagonError):
    pass


class NotNormal(PentagonError):
    pass


class NotComplement(PentagonError):
    pass


class NotAnAction(PentagonError):
    pass


class NotABicharacter(PentagonError):
    def __init__(self, reason, witness=None):
        super().__init__(reason, witness)
        self.reason = reason


class InvalidMatchedPair(PentagonError):
    pass


class InvalidGroup(PentagonError):
    pass


class SizeTooLarge(PentagonError):
    pass


class NotSetTheoretic(PentagonError):
    pass


class StageFailure(PentagonError):
    def __init__(self, stage, witness=None):
        super().__init__("stage %s failed" % stage, witness)
        self.stage = stage


class UnknownName(PentagonError, KeyError):
    pass
