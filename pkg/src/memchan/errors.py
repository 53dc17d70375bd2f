"""Exception hierarchy.  Everything raised on purpose derives from MemchanError."""


class MemchanError(Exception):
    pass


class ValidationError(MemchanError, ValueError):
    """Malformed input: wrong shape, asymmetric matrix, parameter out of range."""


class DomainError(MemchanError, ValueError):
    """Argument outside the mathematical domain of a function."""


class UnphysicalStateError(MemchanError, ArithmeticError):
    """A covariance matrix violates the uncertainty principle beyond tolerance."""
