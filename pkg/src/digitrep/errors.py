"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the domain of the operation."""


class NotANodeError(DomainError):
    """A value does not coincide with any node of the lattice."""


class UnsupportedRadixError(DomainError):
    """The requested procedure is only defined for particular radices."""
