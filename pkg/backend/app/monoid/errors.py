"""Exceptions raised by the monoid library.

Bounded decisions never raise; these cover misuse (wrong instance, unit
input, malformed text) and the hard preconditions of the factorisation layer.
"""


class MonoidError(ValueError):
    """Base class for all library errors."""

    pass


class MixedInstanceError(MonoidError):
    """Raised when an element is handed to an instance it does not belong to."""

    pass


class UnitElementError(MonoidError):
    """Raised when an operation that requires a non-unit receives the identity."""

    pass


class NotAnAtomError(MonoidError):
    """Raised by chi() when the argument is not a certified atom."""

    pass


class InfiniteSupportError(MonoidError):
    """Raised by pi_finite() for exponent maps with a cofinite base pattern."""

    pass


class FiniteMultiplicityError(MonoidError):
    """Raised when a convergent product would repeat a factor infinitely often."""

    pass


class NotInZError(MonoidError):
    """Raised when an operation requires exponent maps verified to lie in Z(H)."""

    pass


class OrderViolationError(MonoidError):
    """Raised when d <= c fails for order_ideal_check."""

    pass


class InvalidInstanceParams(MonoidError):
    """Raised by make_instance for parameters outside the supported range."""

    pass


class UnknownInstanceError(MonoidError):
    """Raised for instance kinds that are not registered."""

    pass


class ElementParseError(MonoidError):
    """Raised when element or stream text cannot be parsed.

    Carries the 1-based line and column of the offending character.
    """

    def __init__(self, message: str, text: str = "", position: int = 0):
        self.line = text.count("\n", 0, position) + 1
        last_newline = text.rfind("\n", 0, position)
        self.column = position - last_newline
        self.message = message
        super().__init__(f"{message} (line {self.line}, column {self.column})")
