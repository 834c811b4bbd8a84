"""Exception hierarchy.

Every error raised by the library derives from :class:`FuzzAllocError`, which
itself is a :class:`ValueError`, so callers that only care about bad input can
catch the builtin.
"""


class FuzzAllocError(ValueError):
    """Base class for all library errors."""


# utility
class DegenerateCoefficients(FuzzAllocError):
    pass


class NonFiniteDerivative(FuzzAllocError):
    pass


class DivisionByZeroSlope(FuzzAllocError):
    pass


class ZeroMarginalUtility(FuzzAllocError):
    pass


class NegativeVariance(FuzzAllocError):
    pass


# capm
class InvalidMarketParams(FuzzAllocError):
    pass


class NegativeStdev(FuzzAllocError):
    pass


# fuzzy sets
class DegreeOutOfRange(FuzzAllocError):
    pass


class LengthMismatch(FuzzAllocError):
    pass


class DuplicateLabel(FuzzAllocError):
    pass


class EmptySubset(FuzzAllocError):
    pass


class LabelMismatch(FuzzAllocError):
    pass


class PreferenceRelationError(FuzzAllocError):
    """Raised by preference-relation validation.

    ``violations`` holds every offending cell, not only the first one.
    """

    def __init__(self, message, violations=()):
        super().__init__(message)
        self.violations = tuple(violations)


class NonSquare(PreferenceRelationError):
    pass


class EntryOutOfRange(PreferenceRelationError):
    pass


class DiagonalViolation(PreferenceRelationError):
    pass


class ReciprocityViolation(PreferenceRelationError):
    pass


# fuzziness measures
class NotAProbabilityVector(FuzzAllocError):
    pass


class InvalidConfig(FuzzAllocError):
    pass


# control
class InvalidControlProblem(FuzzAllocError):
    pass


class StepTooLarge(InvalidControlProblem):
    pass


class NonUniformSpacing(FuzzAllocError):
    pass


# cli
class ScenarioError(FuzzAllocError):
    pass
