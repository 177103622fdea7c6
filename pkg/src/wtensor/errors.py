"""Exception hierarchy shared by every module."""


class WTensorError(Exception):
    pass


class DomainError(WTensorError, ValueError):
    """An argument lies outside the domain of an operation."""


class SizeError(WTensorError, ValueError):
    """An enumeration budget would be exceeded."""


class UnsupportedModeError(WTensorError, ValueError):
    """The operation does not support the requested weight mode."""


class ParseError(WTensorError, ValueError):
    """A polynomial, sequence or matrix literal could not be parsed."""


class ConsistencyError(WTensorError, RuntimeError):
    """An internal exactness guarantee was violated. Must never fire."""
