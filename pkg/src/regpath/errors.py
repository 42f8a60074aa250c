"""Exception types shared across the package."""

from __future__ import annotations


class RegpathError(Exception):
    """Base class for all package errors."""


class GraphFormatError(RegpathError):
    """Malformed instance or decomposition file."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class ValidationError(RegpathError):
    """An object violates its structural invariants."""


class PreconditionError(RegpathError):
    """An operation was called on input outside its contract."""


class ExceptionalError(RegpathError):
    """A 2-path repair was blocked by an exceptional subgraph (k = 3 only).

    Expected and recoverable: callers route around it with a 3-path peel.
    """

    def __init__(self, extension):
        self.extension = extension
        super().__init__("extension contains an exceptional subgraph")


class SearchExhausted(RegpathError):
    """An exact search ended without a solution (budget hit or empty space)."""

    def __init__(self, message: str, stats: dict | None = None):
        self.stats = stats or {}
        super().__init__(message)


class ContractViolation(RegpathError):
    """Bug trap: a fact guaranteed by the construction failed at runtime."""


class RetryExhausted(RegpathError):
    """A randomized generator gave up after its attempt bound."""
