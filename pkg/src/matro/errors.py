"""Exception hierarchy.

Every error carries a machine-readable ``code`` (the class name) and the CLI
exit status it maps to.  Element labels in messages are 1-based.
"""


class MatroError(Exception):
    exit_code = 1

    @property
    def code(self):
        return type(self).__name__


class ValidationError(MatroError):
    """Input does not describe a valid object."""

    exit_code = 2


class ParseError(MatroError):
    exit_code = 3

    def __init__(self, message, line=None, column=None):
        if line is not None:
            message = f"{message} (line {line}, column {column})"
        super().__init__(message)
        self.line = line
        self.column = column


class PreconditionError(MatroError):
    """A valid object that the requested operation does not accept."""

    exit_code = 4


class EmptyBases(ValidationError):
    pass


class WrongCardinality(ValidationError):
    pass


class GroundSetTooLarge(ValidationError):
    pass


class ExchangeAxiomViolated(ValidationError):
    def __init__(self, message, sigma=None, tau=None, element=None):
        super().__init__(message)
        self.sigma = sigma
        self.tau = tau
        self.element = element


class NotAnAntichain(ValidationError):
    pass


class DisconnectedGraph(ValidationError):
    pass


class GraphLoopEdge(ValidationError):
    pass


class ZeroMatrix(ValidationError):
    pass


class BadParameters(ValidationError):
    pass


class RationalParseError(ValidationError):
    pass


class LengthMismatch(ValidationError):
    pass


class InvalidBuildingSet(ValidationError):
    pass


class NotSubsetOfLattice(ValidationError):
    pass


class NotAFlat(PreconditionError):
    pass


class NotNested(PreconditionError):
    pass


class NotABasis(PreconditionError):
    pass


class NotAFacet(PreconditionError):
    pass


class TopMissing(PreconditionError):
    pass


class NotConnected(PreconditionError):
    pass


class HasLoops(PreconditionError):
    pass
