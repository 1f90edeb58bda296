"""Exception hierarchy shared across the package."""


class CongameError(Exception):
    """Base class for all errors raised by this package."""


class GameValidationError(CongameError, ValueError):
    """A game, strategy, or file does not satisfy its contract."""


class DimensionMismatchError(GameValidationError):
    """Payoff matrices, weight vectors, or strategies have inconsistent sizes."""


class NegativeWeightError(GameValidationError):
    """An action weight or cap is negative."""


class NonFiniteEntryError(GameValidationError):
    """A matrix or vector entry is NaN or infinite."""


class InvalidStrategyError(GameValidationError):
    """A vector is not a probability distribution within tolerance."""


class SchemaError(GameValidationError):
    """A JSON document is missing a field or has a field of the wrong type."""


class EmptyFeasibleSetError(CongameError):
    """A player's cap is below the cheapest action, so no strategy is feasible."""


class LpNumericalError(CongameError):
    """The simplex kernel could not find an admissible pivot.

    Raised instead of returning a possibly wrong answer.
    """


class NegativeThresholdError(GameValidationError):
    """Transmit power too small to make the highest rate decodable."""


class BudgetOutOfRangeError(GameValidationError):
    """A jammer budget lies outside [0, max jamming power]."""


class CertificateVerificationError(CongameError):
    """A constructed certificate failed its own verification."""
