"""Exception types shared across the package."""


class ModunitsError(Exception):
    """Base class for all package-specific errors."""


class InvalidSpec(ModunitsError):
    """A group-spec string could not be parsed."""

    def __init__(self, message: str, position: int = 0):
        super().__init__(f"{message} (at position {position})")
        self.position = position
        self.reason = message


class ClosureExceedsCap(ModunitsError):
    """Generating a group blew past the configured order cap."""


class NotPrime(ModunitsError):
    """A parameter that must be prime is not."""


class ContextMismatch(ModunitsError):
    """Two algebra elements from different algebras were combined."""


class OrderMismatch(ModunitsError):
    """A group element does not have the order an operation requires."""


class NotCentral(ModunitsError):
    """A group element required to be central is not."""


class NotAUnit(ModunitsError):
    """An element that must be invertible is not."""


class PreconditionViolated(ModunitsError):
    """A witness constructor was called outside its stated preconditions."""


class PredicateNotSatisfied(ModunitsError):
    """An operation requires the group criterion to hold and it does not."""


class BudgetExceeded(ModunitsError):
    """An enumeration or closure would exceed its configured cap."""

    def __init__(self, message: str, required: int):
        super().__init__(message)
        self.required = required


class EngelInconclusive(ModunitsError):
    """An Engel iteration hit its step cap without stabilizing or cycling."""
