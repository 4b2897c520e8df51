"""Exception types raised across the package."""


class DomainError(ValueError):
    """An argument lies outside the domain where a quantity is defined."""


class MalformedInputError(DomainError):
    """An array has the wrong shape or structure."""


class OutOfModelError(DomainError):
    """Parameters push the imperfection model outside its validity range."""


class NumericalError(ArithmeticError):
    """A linear-algebra routine failed or returned an unusable result."""


class DegenerateDataError(NumericalError):
    """Sampled data has a singular empirical covariance."""
