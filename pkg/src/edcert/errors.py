"""Exception types shared across the package."""


class EdcertError(Exception):
    """Base class for all package errors."""


class ResourceError(EdcertError):
    """An enumeration or search would exceed its configured cap."""


class InvalidConstruction(EdcertError):
    """A witness construction was requested outside its preconditions."""


class ConsistencyError(EdcertError):
    """Two independent computations of the same quantity disagree.

    This is never expected; raising it means a bug in the library.
    """


class UnsupportedError(EdcertError):
    """Parameters outside the supported family or range."""
