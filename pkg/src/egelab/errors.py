"""Exception types shared across the package."""


class DomainError(ValueError):
    """Argument outside the domain where a quantity is defined."""


class DimensionError(ValueError):
    """Matrix orders do not match."""


class BudgetExceeded(RuntimeError):
    """An exact enumeration would exceed its step budget."""


class Unsupported(NotImplementedError):
    """Requested parameters are outside what an operation supports."""
